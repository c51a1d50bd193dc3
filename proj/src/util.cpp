#include "algdyn/util.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <mutex>
#include <thread>
#include <vector>

namespace algdyn {

static bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

mpz_class parse_mpz(const std::string& s) {
    if (!is_integer_literal(s)) fail("config_invalid", "bad integer literal: '" + s + "'");
    return mpz_class(s);
}

mpq_class parse_rational(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den))
        fail("config_invalid", "bad rational literal: '" + s + "'");
    mpz_class n(num), d(den);
    if (d == 0) fail("config_invalid", "zero denominator in rational: '" + s + "'");
    return make_rational(n, d);
}

std::string format_rational(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) fail("config_invalid", "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpz_class floor_rational(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

mpz_class ceil_rational(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

double log_abs_mpz(const mpz_class& z) {
    if (z == 0) fail("out_of_range", "log of zero");
    signed long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * M_LN2;
}

int effective_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(int nchunks, int threads, const std::function<void(int)>& fn) {
    threads = effective_threads(threads);
    if (threads > nchunks) threads = nchunks;
    if (threads <= 1) {
        for (int c = 0; c < nchunks; ++c) fn(c);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                int c = next.fetch_add(1);
                if (c >= nchunks || failed.load()) return;
                try {
                    fn(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load() && err) std::rethrow_exception(err);
}

}  // namespace algdyn
