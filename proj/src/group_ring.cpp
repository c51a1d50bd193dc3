#include "algdyn/group_ring.hpp"

#include <array>

namespace algdyn {

RingElement RingElement::unit(const GroupSpec& spec) {
    return delta(GroupElement::identity(spec));
}

RingElement RingElement::delta(const GroupElement& g, const mpq_class& c) {
    RingElement e(g.spec());
    e.add_term(g, c);
    return e;
}

mpq_class RingElement::coeff(const GroupElement& g) const {
    auto it = coeffs_.find(g);
    return it == coeffs_.end() ? mpq_class(0) : it->second;
}

void RingElement::add_term(const GroupElement& g, const mpq_class& c) {
    if (!(g.spec() == spec_)) fail("family_mismatch", "term from a different group");
    if (c == 0) return;
    auto [it, inserted] = coeffs_.emplace(g, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

std::vector<GroupElement> RingElement::support() const {
    std::vector<GroupElement> out;
    out.reserve(coeffs_.size());
    for (const auto& [g, c] : coeffs_) out.push_back(g);
    return out;
}

bool RingElement::integer_valued() const {
    for (const auto& [g, c] : coeffs_)
        if (c.get_den() != 1) return false;
    return true;
}

RingElement& RingElement::operator+=(const RingElement& o) {
    if (!(o.spec_ == spec_)) fail("family_mismatch", "operands from different groups");
    for (const auto& [g, c] : o.coeffs_) add_term(g, c);
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
    if (!(o.spec_ == spec_)) fail("family_mismatch", "operands from different groups");
    for (const auto& [g, c] : o.coeffs_) add_term(g, -c);
    return *this;
}

RingElement& RingElement::operator*=(const mpq_class& c) {
    if (c == 0) {
        *this = RingElement(spec_);
        return *this;
    }
    for (auto& [g, v] : coeffs_) v *= c;
    return *this;
}

RingElement convolve(const RingElement& g, const RingElement& h) {
    if (!(g.spec() == h.spec())) fail("family_mismatch", "operands from different groups");
    RingElement out(g.spec());
    for (const auto& [a, ca] : g.coeffs())
        for (const auto& [b, cb] : h.coeffs()) out.add_term(element_mul(a, b), ca * cb);
    return out;
}

RingElement adjoint(const RingElement& g) {
    RingElement out(g.spec());
    for (const auto& [a, ca] : g.coeffs()) out.add_term(element_inv(a), ca);
    return out;
}

mpq_class l1_norm(const RingElement& g) {
    mpq_class s = 0;
    for (const auto& [a, ca] : g.coeffs()) s += abs(ca);
    return s;
}

template <typename T>
static std::vector<T> quotient_convolve_impl(const std::vector<T>& psi, const RingElement& g,
                                             const FiniteQuotient& q, bool integral_only) {
    if (!(g.spec() == q.spec())) fail("family_mismatch", "ring element from a different group");
    if (static_cast<std::int64_t>(psi.size()) != q.index())
        fail("out_of_range", "vector length does not match quotient index");
    if (integral_only && !g.integer_valued())
        fail("non_integer", "integer convolution requires integer coefficients");
    std::vector<T> out(psi.size(), T(0));
    for (const auto& [beta, c] : g.coeffs()) {
        std::vector<int> table = q.translation_table(element_inv(beta));
        if constexpr (std::is_same_v<T, mpz_class>) {
            mpz_class cz = c.get_num();
            for (std::size_t i = 0; i < psi.size(); ++i)
                out[i] += psi[static_cast<std::size_t>(table[i])] * cz;
        } else {
            for (std::size_t i = 0; i < psi.size(); ++i)
                out[i] += psi[static_cast<std::size_t>(table[i])] * c;
        }
    }
    return out;
}

std::vector<mpq_class> quotient_convolve(const std::vector<mpq_class>& psi, const RingElement& g,
                                         const FiniteQuotient& q) {
    return quotient_convolve_impl(psi, g, q, false);
}

std::vector<mpz_class> quotient_convolve(const std::vector<mpz_class>& psi, const RingElement& g,
                                         const FiniteQuotient& q) {
    return quotient_convolve_impl(psi, g, q, true);
}

TorusPoint quotient_convolve(const TorusPoint& psi, const RingElement& g,
                             const FiniteQuotient& q) {
    TorusPoint out;
    out.den = psi.den;
    out.num = quotient_convolve_impl(psi.num, g, q, true);
    out.reduce();
    return out;
}

std::vector<std::array<std::string, 3>> serialize_ring_element(const RingElement& g) {
    std::vector<std::array<std::string, 3>> out;
    out.reserve(g.support_size());
    for (const auto& [a, c] : g.coeffs())
        out.push_back({format_word(a), c.get_num().get_str(), c.get_den().get_str()});
    return out;
}

RingElement deserialize_ring_element(const GroupSpec& spec,
                                     const std::vector<std::array<std::string, 3>>& terms) {
    RingElement out(spec);
    for (const auto& [word, num, den] : terms) {
        mpq_class c = make_rational(parse_mpz(num), parse_mpz(den));
        out.add_term(parse_word(spec, word), c);
    }
    return out;
}

}  // namespace algdyn
