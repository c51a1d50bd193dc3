#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "algdyn/expansive.hpp"
#include "algdyn/group_ring.hpp"
#include "algdyn/intmat.hpp"
#include "algdyn/rng.hpp"
#include "algdyn/snf.hpp"
#include "algdyn/torus.hpp"

namespace algdyn {

// Matrix of psi -> psi * g on the coset space (row vectors):
// entry [C][C'] = sum { g(beta) : C * beta = C' }.
SparseIntMat right_convolution_matrix(const RingElement& g, const FiniteQuotient& q);

// Matrix of the defining operator psi -> psi * f^* (adjoint taken here).
SparseIntMat convolution_matrix(const RingElement& f, const FiniteQuotient& q);

// v * A for a row vector.
std::vector<mpz_class> row_vec_mul(const std::vector<mpz_class>& v, const SparseIntMat& a);
std::vector<mpq_class> row_vec_mul(const std::vector<mpq_class>& v, const SparseIntMat& a);

// |det convolution_matrix(f, q)|; the number of fixed points of the shift on
// the solution torus over this quotient. Zero determinant is an error
// (degenerate quotient).
mpz_class fixed_point_count(const RingElement& f, const FiniteQuotient& q,
                            const DetOptions& opt);

struct GrowthPoint {
    std::string quotient;
    std::int64_t index = 0;
    mpz_class count;
    double log_count_over_index = 0.0;
};

struct GrowthSeries {
    std::vector<GrowthPoint> points;
    double tail_max = 0.0;  // max of log|count|/index over the later half
};

GrowthSeries growth_rate_series(const RingElement& f, const GroupSpec& spec,
                                const std::vector<QuotientParams>& family,
                                const DetOptions& opt);

// The finite group X_f(Gamma_i) = { x in T^(Gamma_i\Gamma) : x * f^* = 0 },
// presented through the Smith normal form of the convolution matrix:
// solutions are x = z * U mod 1 where z_i ranges over (1/d_i)Z / Z.
class FixedPointSpace {
public:
    FixedPointSpace(const RingElement& f, const FiniteQuotient& q);

    const FiniteQuotient& quotient() const { return q_; }
    const RingElement& defining_element() const { return f_; }
    const SmithDecomposition& snf() const { return snf_; }
    const SparseIntMat& matrix() const { return mat_; }
    const mpz_class& count() const { return count_; }
    const mpz_class& torus_den() const { return den_; }

    // Uniform sample; k_i is drawn for each nontrivial divisor in ascending
    // index order, so the stream layout is reproducible.
    TorusPoint sample(Rng& rng) const;

    // Same draw sequence, but only the listed coordinates are materialized
    // (numerators mod torus_den).
    std::vector<mpz_class> sample_at(Rng& rng, const std::vector<int>& coords) const;

    // xi(h) = h * A^-1 mod 1 for integer h; always lands in the space.
    TorusPoint xi(const std::vector<mpz_class>& h) const;

    // All fixed points in odometer order; refuses when count > cap.
    std::vector<TorusPoint> enumerate(std::uint64_t cap) const;

private:
    std::vector<mpz_class> combine(const std::vector<mpz_class>& ks) const;

    FiniteQuotient q_;
    RingElement f_;
    SparseIntMat mat_;
    SmithDecomposition snf_;
    mpz_class count_;
    mpz_class den_;
    std::vector<int> nontrivial_;  // indices with d_i > 1
    // Per nontrivial divisor index i: scale_i * (e_i U) mod D and V e_i mod D.
    // Solutions are x = sum_i k_i * rows_[i] / D with k_i in Z/d_i, and the
    // decoding section reads k_i off as <h, cols_[i]> mod d_i; materializing
    // both in the constructor makes every draw a handful of mulmods.
    std::vector<std::vector<mpz_class>> rows_;
    std::vector<std::vector<mpz_class>> cols_;
};

}  // namespace algdyn
