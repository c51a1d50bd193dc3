#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "algdyn/groups.hpp"
#include "algdyn/torus.hpp"

namespace algdyn {

// Finitely supported rational function on a group; the rational group
// algebra element sum_gamma coeff(gamma) * gamma. Zero coefficients are
// never stored, so equality is structural.
class RingElement {
public:
    explicit RingElement(GroupSpec spec) : spec_(spec) {}

    static RingElement zero(const GroupSpec& spec) { return RingElement(spec); }
    static RingElement unit(const GroupSpec& spec);  // 1_e
    static RingElement delta(const GroupElement& g, const mpq_class& c = 1);

    const GroupSpec& spec() const { return spec_; }
    const std::map<GroupElement, mpq_class>& coeffs() const { return coeffs_; }

    mpq_class coeff(const GroupElement& g) const;
    void add_term(const GroupElement& g, const mpq_class& c);  // accumulate, dropping zeros

    bool is_zero() const { return coeffs_.empty(); }
    std::size_t support_size() const { return coeffs_.size(); }
    std::vector<GroupElement> support() const;
    bool integer_valued() const;

    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const mpq_class& c);

    bool operator==(const RingElement& o) const {
        return spec_ == o.spec_ && coeffs_ == o.coeffs_;
    }

private:
    GroupSpec spec_;
    std::map<GroupElement, mpq_class> coeffs_;
};

// (g*h)(gamma) = sum_beta g(beta) h(beta^-1 gamma).
RingElement convolve(const RingElement& g, const RingElement& h);

// g*(gamma) = conj(g(gamma^-1)); coefficients are rational, so just g(gamma^-1).
RingElement adjoint(const RingElement& g);

mpq_class l1_norm(const RingElement& g);

// Right convolution on a finite quotient:
//   (psi * g)(C) = sum_beta psi(C * beta^-1) g(beta).
std::vector<mpq_class> quotient_convolve(const std::vector<mpq_class>& psi, const RingElement& g,
                                         const FiniteQuotient& q);
std::vector<mpz_class> quotient_convolve(const std::vector<mpz_class>& psi, const RingElement& g,
                                         const FiniteQuotient& q);  // integer g
TorusPoint quotient_convolve(const TorusPoint& psi, const RingElement& g,
                             const FiniteQuotient& q);  // integer g, computed mod 1

// Serialization: list of [word, numerator, denominator] with decimal strings.
std::vector<std::array<std::string, 3>> serialize_ring_element(const RingElement& g);
RingElement deserialize_ring_element(const GroupSpec& spec,
                                     const std::vector<std::array<std::string, 3>>& terms);

}  // namespace algdyn
