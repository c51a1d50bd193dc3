#include "algdyn/expansive.hpp"

#include <algorithm>

namespace algdyn {

DominanceCertificate dominance_certificate(const RingElement& f) {
    if (f.is_zero()) fail("not_certified", "zero element cannot be expansive");
    if (!f.integer_valued())
        fail("non_integer", "dominance certification expects integer coefficients");
    GroupElement e = GroupElement::identity(f.spec());
    mpq_class c = f.coeff(e);
    if (c == 0) return {false, mpq_class(0)};
    mpq_class off = l1_norm(f) - abs(c);
    DominanceCertificate cert;
    cert.margin = 1 - off / abs(c);
    cert.certified = cert.margin > 0;
    if (!cert.certified) cert.margin = 0;
    return cert;
}

TruncatedInverse neumann_inverse(const RingElement& f, const mpq_class& tail_tol,
                                 std::size_t support_cap) {
    DominanceCertificate cert = dominance_certificate(f);
    if (!cert.certified)
        fail("not_certified", "identity coefficient does not dominate; no series inverse");
    if (tail_tol <= 0) fail("out_of_range", "tail tolerance must be positive");

    GroupSpec spec = f.spec();
    GroupElement e = GroupElement::identity(spec);
    mpq_class c = f.coeff(e);
    mpq_class cinv = 1 / c;

    // u = 1_e - f/c, r = ||u||_1 < 1.
    RingElement u = RingElement::unit(spec);
    RingElement scaled = f;
    scaled *= cinv;
    u -= scaled;
    mpq_class r = l1_norm(u);

    TruncatedInverse out;
    out.leading_unit = c;

    // tail(K) = |c|^-1 r^(K+1) / (1 - r); find the smallest adequate K.
    mpq_class tail = r == 0 ? mpq_class(0) : abs(cinv) * r / (1 - r);
    int K = 0;
    while (tail > tail_tol) {
        tail *= r;
        ++K;
        if (K > 1000000) fail("cap_exceeded", "truncation order exploded");
    }
    out.order = K;
    out.tail_bound = tail;

    RingElement acc = RingElement::unit(spec);  // u^k
    RingElement inv = RingElement::unit(spec);  // sum of u^k so far
    for (int k = 1; k <= K; ++k) {
        acc = convolve(acc, u);
        if (acc.support_size() > support_cap)
            fail("cap_exceeded", "truncated inverse support exceeds cap");
        inv += acc;
        if (inv.support_size() > support_cap)
            fail("cap_exceeded", "truncated inverse support exceeds cap");
    }
    inv *= cinv;
    out.approx = inv;
    return out;
}

TruncatedInverse fhat_from_inverse(const TruncatedInverse& inv) {
    TruncatedInverse out = inv;
    out.approx = adjoint(inv.approx);
    return out;
}

TruncatedInverse fhat(const RingElement& f, const mpq_class& tail_tol, std::size_t support_cap) {
    return fhat_from_inverse(neumann_inverse(f, tail_tol, support_cap));
}

mpq_class inverse_residual(const RingElement& f, const TruncatedInverse& inv) {
    RingElement res = convolve(f, inv.approx);
    res -= RingElement::unit(f.spec());
    return l1_norm(res);
}

std::vector<GroupElement> select_window(const TruncatedInverse& fh, int bound_M,
                                        const mpq_class& delta) {
    if (bound_M < 1) fail("out_of_range", "alphabet bound must be >= 1");
    if (delta <= 0) fail("out_of_range", "delta must be positive");
    if (bound_M * fh.tail_bound >= delta)
        fail("tail_too_loose",
             "truncation tail alone exceeds the window budget; tighten the tolerance");

    std::vector<std::pair<GroupElement, mpq_class>> entries(fh.approx.coeffs().begin(),
                                                            fh.approx.coeffs().end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        mpq_class aa = abs(a.second), bb = abs(b.second);
        if (aa != bb) return aa > bb;
        return a.first < b.first;
    });

    mpq_class off = l1_norm(fh.approx);
    std::vector<GroupElement> window;
    for (const auto& [g, c] : entries) {
        if (bound_M * (off + fh.tail_bound) < delta) break;
        window.push_back(g);
        off -= abs(c);
    }
    if (bound_M * (off + fh.tail_bound) >= delta)
        fail("tail_too_loose", "window selection could not meet the budget");
    return window;
}

}  // namespace algdyn
