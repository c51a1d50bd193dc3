#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace algdyn {

// Error with a stable machine-readable code; the CLI maps codes to exit
// statuses (see README). what() is "code: message" so the code survives
// generic catch sites; code() and message() give the parts.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)), message_(msg) {}
    const std::string& code() const { return code_; }
    const std::string& message() const { return message_; }

private:
    std::string code_;
    std::string message_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

// Parses "p/q" or "p" (decimal, optional sign) into a canonical rational.
mpq_class parse_rational(const std::string& s);

// Decimal string (optional sign) to integer; rejects anything else.
mpz_class parse_mpz(const std::string& s);

// "p/q", or "p" when the denominator is 1.
std::string format_rational(const mpq_class& q);

// num/den in canonical form; den must be nonzero.
mpq_class make_rational(const mpz_class& num, const mpz_class& den);

mpz_class floor_rational(const mpq_class& q);
mpz_class ceil_rational(const mpq_class& q);

// Natural log of |z| for z != 0; works far beyond double range.
double log_abs_mpz(const mpz_class& z);

// Runs fn(chunk) for chunk in [0, nchunks). The chunk layout is fixed, so
// any reduction done in chunk order is independent of the worker count.
void parallel_chunks(int nchunks, int threads, const std::function<void(int)>& fn);

int effective_threads(int requested);

}  // namespace algdyn
