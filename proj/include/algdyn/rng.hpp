#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace algdyn {

// Deterministic random stream. All bounded draws are implemented here by
// rejection on raw 64-bit words, so a given seed produces the same sequence
// on every platform and library version.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, m); m >= 1.
    std::uint64_t below(std::uint64_t m);

    // Uniform on [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi);

    // Uniform on [0, bound); bound >= 1.
    mpz_class below_mpz(const mpz_class& bound);

    // Uniform double in [0, 1) with 53 random bits (diagnostics only; all
    // exact paths draw integers).
    double unit_double();

    // Independent stream for a named subtask. Derivation depends only on
    // (seed, tag), never on how much the parent stream has been consumed.
    Rng child(std::uint64_t tag) const;

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace algdyn
