#include "algdyn/torus.hpp"

namespace algdyn {

TorusPoint TorusPoint::zero(std::size_t n, mpz_class den) {
    if (den <= 0) fail("out_of_range", "torus denominator must be positive");
    TorusPoint p;
    p.den = std::move(den);
    p.num.assign(n, mpz_class(0));
    return p;
}

mpq_class TorusPoint::coord(std::size_t i) const { return make_rational(num[i], den); }

void TorusPoint::reduce() {
    for (auto& v : num) {
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), den.get_mpz_t());
    }
}

bool TorusPoint::operator==(const TorusPoint& o) const {
    if (num.size() != o.num.size()) return false;
    if (den == o.den) return num == o.num;
    for (std::size_t i = 0; i < num.size(); ++i)
        if (num[i] * o.den != o.num[i] * den) return false;
    return true;
}

mpq_class ScaledVec::coord(std::size_t i) const { return make_rational(num[i], den); }

}  // namespace algdyn
