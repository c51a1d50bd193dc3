#include "algdyn/rng.hpp"

#include <vector>

#include "algdyn/util.hpp"

namespace algdyn {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t m) {
    if (m == 0) fail("out_of_range", "rng bound must be positive");
    if ((m & (m - 1)) == 0) return next_u64() & (m - 1);
    std::uint64_t threshold = (-m) % m;  // 2^64 mod m
    for (;;) {
        std::uint64_t r = next_u64();
        if (r >= threshold) return r % m;
    }
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) fail("out_of_range", "rng range is empty");
    std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
    return lo + static_cast<std::int64_t>(below(span));
}

mpz_class Rng::below_mpz(const mpz_class& bound) {
    if (bound <= 0) fail("out_of_range", "rng bound must be positive");
    std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
    std::uint64_t top_mask = top_bits >= 64 ? ~0ULL : ((1ULL << top_bits) - 1);
    std::vector<std::uint64_t> buf(words);
    for (;;) {
        for (std::size_t i = 0; i < words; ++i) buf[i] = next_u64();
        buf[words - 1] &= top_mask;
        mpz_class z;
        mpz_import(z.get_mpz_t(), words, -1 /* least significant word first */, 8, 0, 0,
                   buf.data());
        if (z < bound) return z;
    }
}

double Rng::unit_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Rng Rng::child(std::uint64_t tag) const {
    return Rng(splitmix64(seed_ ^ splitmix64(tag)));
}

}  // namespace algdyn
