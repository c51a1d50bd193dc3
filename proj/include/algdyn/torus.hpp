#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "algdyn/util.hpp"

namespace algdyn {

// Point of the finite-dimensional torus with a shared denominator:
// coordinate i is num[i]/den mod 1, kept reduced to 0 <= num[i] < den.
// A shared denominator avoids per-coordinate gcds at large quotient sizes.
struct TorusPoint {
    mpz_class den{1};
    std::vector<mpz_class> num;

    static TorusPoint zero(std::size_t n, mpz_class den = 1);

    std::size_t size() const { return num.size(); }
    mpq_class coord(std::size_t i) const;  // canonical rational in [0,1)
    void reduce();                         // bring all numerators into [0, den)

    bool operator==(const TorusPoint& o) const;  // compares values, not representations
};

// Rational vector with a shared denominator (not reduced mod 1); the lift
// of a torus point lives here.
struct ScaledVec {
    mpz_class den{1};
    std::vector<mpz_class> num;

    std::size_t size() const { return num.size(); }
    mpq_class coord(std::size_t i) const;
};

}  // namespace algdyn
