#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "algdyn/intmat.hpp"

namespace algdyn {

// One elementary row or column operation. For row ops: Swap exchanges rows
// i,j; Negate flips row i; AddMul does row_i += c * row_j. Column ops read
// the same way with columns.
enum class OpKind : std::uint8_t { Swap, Negate, AddMul };

struct ElemOp {
    OpKind kind;
    int i = 0;
    int j = 0;
    mpz_class c;
};

// U * A * V = diag(divisors) with d_k | d_{k+1} and d_k >= 0. U and V are
// unimodular, stored as the elementary operation sequences that were applied
// to A (row ops left to right compose to U, column ops to V). Keeping the
// op sequences instead of dense matrices makes index-10^3..10^4 quotients
// cheap: applying U or V to a vector costs O(#ops) big-integer updates.
class SmithDecomposition {
public:
    int n = 0;
    std::vector<mpz_class> divisors;
    std::vector<ElemOp> row_ops;  // applied to A as E_1, ..., E_t; U = E_t ... E_1
    std::vector<ElemOp> col_ops;  // applied to A as F_1, ..., F_s; V = F_1 ... F_s

    mpz_class divisor_product() const;  // |det A|
    mpz_class divisor_lcm() const;      // largest divisor (0 if A is singular)

    // z <- z * U (row vector); entries reduced mod *mod when given.
    void mul_U_inplace(std::vector<mpz_class>& z, const mpz_class* mod) const;
    // z <- z * V.
    void mul_V_inplace(std::vector<mpz_class>& z, const mpz_class* mod) const;
    // Column j of U, i.e. U e_j.
    std::vector<mpz_class> U_column(int j) const;
    // Column j of V, i.e. V e_j; entries reduced mod *mod when given.
    std::vector<mpz_class> V_column(int j, const mpz_class* mod = nullptr) const;

    // Materialized matrices; meant for verification at small n.
    SparseIntMat U_matrix() const;
    SparseIntMat V_matrix() const;
};

SmithDecomposition smith_normal_form(const SparseIntMat& a);

}  // namespace algdyn
