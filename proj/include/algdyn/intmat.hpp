#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "algdyn/util.hpp"

namespace algdyn {

// Square integer matrix, sparse rows sorted by column.
struct SparseIntMat {
    int n = 0;
    std::vector<std::vector<std::pair<int, mpz_class>>> rows;

    static SparseIntMat zero(int n);
    static SparseIntMat identity(int n);

    // Build-time accumulation; call finalize() once before use.
    void accumulate(int r, int c, const mpz_class& v);
    void finalize();

    mpz_class entry(int r, int c) const;
    std::vector<mpz_class> dense() const;  // row-major n*n
    std::size_t nnz() const;
};

SparseIntMat transpose(const SparseIntMat& a);
SparseIntMat mat_mul(const SparseIntMat& a, const SparseIntMat& b);

// Fraction-free elimination; exact, O(n^3) big-integer operations.
mpz_class det_bareiss(const SparseIntMat& a);

// Chinese-remainder determinant over ~62-bit primes; exact. The prime set
// covers twice the Hadamard bound and one extra prime re-checks the
// reconstruction. Deterministic for any thread count.
mpz_class det_modular(const SparseIntMat& a, int threads);

struct DetOptions {
    int dual_route_cap = 64;  // run both routes and compare when n <= cap
    int threads = 1;
};

// Bareiss and modular dets compared for n <= dual_route_cap (mismatch is an
// internal-bug error); modular-only above the cap.
mpz_class exact_determinant(const SparseIntMat& a, const DetOptions& opt);

mpz_class hadamard_bound(const SparseIntMat& a);

std::uint64_t det_mod_prime(const SparseIntMat& a, std::uint64_t p);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t v);

}  // namespace algdyn
