#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "algdyn/intmat.hpp"
#include "algdyn/rng.hpp"
#include "algdyn/util.hpp"

using namespace algdyn;

namespace {

SparseIntMat from_dense(int n, const std::vector<long>& vals) {
    SparseIntMat m = SparseIntMat::zero(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            long v = vals[static_cast<std::size_t>(r * n + c)];
            if (v) m.accumulate(r, c, v);
        }
    m.finalize();
    return m;
}

SparseIntMat random_mat(Rng& rng, int dim, int spread) {
    SparseIntMat m = SparseIntMat::zero(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            long v = static_cast<long>(rng.below(static_cast<std::uint64_t>(2 * spread + 1))) -
                     spread;
            if (v) m.accumulate(r, c, v);
        }
    m.finalize();
    return m;
}

}  // namespace

TEST_CASE("known determinants") {
    CHECK(det_bareiss(from_dense(1, {7})) == 7);
    CHECK(det_bareiss(from_dense(2, {1, 2, 3, 4})) == -2);
    CHECK(det_bareiss(from_dense(3, {2, 0, 0, 0, 3, 0, 0, 0, -5})) == -30);
    CHECK(det_bareiss(from_dense(2, {1, 2, 2, 4})) == 0);
    CHECK(det_bareiss(SparseIntMat::identity(6)) == 1);
    CHECK(det_modular(from_dense(2, {1, 2, 3, 4}), 1) == -2);
    CHECK(det_modular(from_dense(2, {1, 2, 2, 4}), 1) == 0);
}

TEST_CASE("accumulate sums duplicate entries") {
    SparseIntMat m = SparseIntMat::zero(2);
    m.accumulate(0, 0, 2);
    m.accumulate(0, 0, 3);
    m.accumulate(1, 1, 1);
    m.finalize();
    CHECK(m.entry(0, 0) == 5);
    CHECK(m.nnz() == 2);
    CHECK(det_bareiss(m) == 5);
}

TEST_CASE("fraction-free and modular determinants agree on random matrices") {
    Rng rng(101);
    for (int t = 0; t < 100; ++t) {
        int dim = 1 + static_cast<int>(rng.below(12));
        SparseIntMat m = random_mat(rng, dim, 9);
        mpz_class a = det_bareiss(m);
        mpz_class b = det_modular(m, 1);
        CHECK(a == b);
    }
}

TEST_CASE("modular determinant is independent of the worker count") {
    Rng rng(55);
    SparseIntMat m = random_mat(rng, 40, 30);  // needs several CRT primes
    mpz_class serial = det_modular(m, 1);
    CHECK(det_modular(m, 4) == serial);
    CHECK(serial != 0);
    CHECK(abs(serial) <= hadamard_bound(m));
}

TEST_CASE("the dual-route wrapper matches both routes") {
    Rng rng(77);
    DetOptions opt;
    opt.threads = 2;
    for (int t = 0; t < 20; ++t) {
        int dim = 1 + static_cast<int>(rng.below(8));
        SparseIntMat m = random_mat(rng, dim, 6);
        CHECK(exact_determinant(m, opt) == det_bareiss(m));
    }
}

TEST_CASE("determinants of structured matrices with huge values") {
    // diag(10^9 repeated 8 times) has determinant 10^72; CRT must chain
    // far past one word.
    SparseIntMat m = SparseIntMat::zero(8);
    for (int i = 0; i < 8; ++i) m.accumulate(i, i, mpz_class(1000000000));
    m.finalize();
    mpz_class want;
    mpz_ui_pow_ui(want.get_mpz_t(), 10, 72);
    CHECK(det_modular(m, 1) == want);
    CHECK(det_bareiss(m) == want);
}

TEST_CASE("determinant modulo single primes matches the exact value") {
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        SparseIntMat m = random_mat(rng, 6, 9);
        mpz_class d = det_bareiss(m);
        for (std::uint64_t p : {1000003ull, 2147483647ull}) {
            mpz_class r = d % mpz_class(static_cast<unsigned long>(p));
            if (r < 0) r += static_cast<unsigned long>(p);
            CHECK(mpz_class(static_cast<unsigned long>(det_mod_prime(m, p))) == r);
        }
    }
}

TEST_CASE("64-bit primality sieve used by the CRT pool") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(!is_prime_u64(1));
    CHECK(!is_prime_u64(561));        // Carmichael
    CHECK(is_prime_u64(2147483647));  // 2^31 - 1
    CHECK(!is_prime_u64(2147483649));
    CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
}

TEST_CASE("dense row-major export matches entries") {
    Rng rng(41);
    SparseIntMat m = random_mat(rng, 5, 4);
    std::vector<mpz_class> d = m.dense();
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) CHECK(d[static_cast<std::size_t>(r * 5 + c)] == m.entry(r, c));
}
