#pragma once

#include <vector>

#include "algdyn/group_ring.hpp"

namespace algdyn {

// Witness that |f(e)| strictly dominates the off-identity l1 mass. The
// margin is 1 - (sum_{gamma != e} |f(gamma)|) / |f(e)|, in (0, 1].
struct DominanceCertificate {
    bool certified = false;
    mpq_class margin;
};

DominanceCertificate dominance_certificate(const RingElement& f);

// Truncated geometric-series inverse: with c = f(e) and u = 1_e - f/c,
// approx = c^-1 sum_{k<=order} u^k and ||f^-1 - approx||_1 <= tail_bound
// = |c|^-1 r^(order+1) / (1-r) where r = ||u||_1 < 1.
struct TruncatedInverse {
    RingElement approx;
    mpq_class tail_bound;
    mpq_class leading_unit;  // c
    int order = 0;

    TruncatedInverse() : approx(GroupSpec::free_abelian(1)) {}
};

// Smallest truncation order whose tail bound is <= tail_tol.
TruncatedInverse neumann_inverse(const RingElement& f, const mpq_class& tail_tol,
                                 std::size_t support_cap = 5000000);

// fhat = (f^-1)^*; same tail bound (the adjoint is an l1 isometry).
TruncatedInverse fhat_from_inverse(const TruncatedInverse& inv);
TruncatedInverse fhat(const RingElement& f, const mpq_class& tail_tol,
                      std::size_t support_cap = 5000000);

// ||convolve(f, inv.approx) - 1_e||_1; bounded by ||f||_1 * tail_bound.
mpq_class inverse_residual(const RingElement& f, const TruncatedInverse& inv);

// Greedy window: support elements of fh.approx in decreasing |coefficient|
// order, extended until bound_M * (off-window mass + tail) < delta.
std::vector<GroupElement> select_window(const TruncatedInverse& fh, int bound_M,
                                        const mpq_class& delta);

}  // namespace algdyn
