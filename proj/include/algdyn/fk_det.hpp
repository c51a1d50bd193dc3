#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algdyn/group_ring.hpp"
#include "algdyn/intmat.hpp"
#include "algdyn/quotient_op.hpp"

namespace algdyn {

// log |det| of the convolution operator on Z^d mod (n_1,...,n_d) computed
// through the character basis: |det| = prod_k |F(k)| where
// F(k) = sum_gamma f(gamma) exp(2 pi i <k, gamma / n>). Independent of the
// integer elimination route. When prod n_j is tiny the exact integer is
// reconstructed from the complex product as a cross-check value.
struct CharacterDet {
    double log_abs = 0.0;
    double err_bound = 0.0;
    std::optional<mpz_class> exact;
};

CharacterDet character_determinant_abelian(const RingElement& f,
                                           const std::vector<std::int64_t>& moduli);

// Grid average of log |F| over the d-torus with grid_per_dim^d equispaced
// points. For symbols with no unimodular zeros this converges exponentially
// in grid_per_dim. Errors out if a grid point lands within 1e-12 of a zero.
double mahler_measure(const RingElement& f, std::int64_t grid_per_dim);

struct FkEntry {
    std::string quotient;
    std::int64_t index = 0;
    std::string count_dec;  // decimal string (values overflow doubles fast)
    double log_det_over_index = 0.0;
};

struct FkReport {
    std::vector<FkEntry> series;
    double tail_max = 0.0;
    std::string oracle_kind;  // "mahler" or "none"
    std::optional<double> oracle;
    std::optional<double> gap;  // |last entry - oracle|
};

// Growth-rate estimate of the operator determinant along a quotient family,
// with the torus-integral oracle attached for full-rank abelian symbols.
FkReport fk_estimate(const RingElement& f, const GroupSpec& spec,
                     const std::vector<QuotientParams>& family, std::int64_t mahler_grid,
                     const DetOptions& opt);

}  // namespace algdyn
