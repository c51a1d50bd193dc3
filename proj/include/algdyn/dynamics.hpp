#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "algdyn/expansive.hpp"
#include "algdyn/group_ring.hpp"
#include "algdyn/quotient_op.hpp"
#include "algdyn/rng.hpp"
#include "algdyn/torus.hpp"

namespace algdyn {

// Fractional-part cut for lifting torus coordinates: coordinates in [0, kappa)
// lift to themselves, the rest to value - 1, so lifts live in [kappa - 1, kappa).
// kappa is an irrational in spirit; concretely we use the rational closest to
// 1/sqrt(2) with denominator 2D+1, which provably differs from every
// coordinate of a D-denominator torus point (gcd(2D+1, D) = 1), while staying
// within ~1e-16 of the float cut used by the noise-model sampler.
struct LiftConfig {
    mpq_class kappa;
    int bound_M = 1;  // ceil ||f||_1; encoded symbols lie in [-M, M]
};

// The float cut used by the approximate sampler; keep the two in sync.
inline constexpr double kKappaFloat = 0.7071067811865476;

int bound_M_for(const RingElement& f);
mpq_class kappa_for_denominator(const mpz_class& torus_den);
LiftConfig lift_config_for(const RingElement& f, const mpz_class& torus_den);

// Coordinatewise lift into [kappa - 1, kappa); exact.
ScaledVec lift_L(const TorusPoint& x, const LiftConfig& cfg);

// P(x) = L(x) * f^* on the quotient; integer vector with entries in [-M, M].
// Errors out if x is not annihilated by f^* (division by the denominator
// must be exact).
std::vector<std::int64_t> map_P(const TorusPoint& x, const RingElement& f,
                                const FiniteQuotient& q, const LiftConfig& cfg);

// xi(h) = h * A^-1 mod 1; the section used to decode integer configurations.
TorusPoint map_xi(const std::vector<mpz_class>& h, const FixedPointSpace& space);

// Window tuple at one coset: (P(x)(C * w^-1))_{w in W}.
std::vector<int> window_tuple(const std::vector<std::int64_t>& p_config,
                              const FiniteQuotient& q, const std::vector<GroupElement>& window,
                              int coset);

// Empirical distribution of window tuples over all cosets (exact rationals).
struct WindowDistribution {
    std::vector<GroupElement> window;
    int alphabet_M = 0;
    std::map<std::vector<int>, mpq_class> probs;
    bool aliased = false;  // some window elements share a coset image

    void check_total() const;  // masses must sum to exactly 1
    WindowDistribution marginal_to(const std::vector<GroupElement>& sub) const;
};

mpq_class l1_distance(const WindowDistribution& a, const WindowDistribution& b);

WindowDistribution window_distribution(const std::vector<std::int64_t>& p_config,
                                       const FiniteQuotient& q,
                                       const std::vector<GroupElement>& window, int alphabet_M);

bool window_aliased(const FiniteQuotient& q, const std::vector<GroupElement>& window);

// Approximate-uniform sampler for the encoded process on the infinite group:
// y is i.i.d. uniform on {-n..n}, x = pi(y * fhat) evaluated in floats with a
// strict error interval, rejecting draws whose lift is ambiguous near the cut.
// Needs n * tail_bound <= 1e-9 so every coordinate is resolved.
class BernoulliSampler {
public:
    BernoulliSampler(const RingElement& f, const TruncatedInverse& fh, int noise_n,
                     const std::vector<GroupElement>& window);

    std::vector<int> sample(Rng& rng);

    std::uint64_t attempts() const { return attempts_; }
    std::uint64_t rejections() const { return rejections_; }

private:
    int noise_n_;
    int bound_M_;
    std::vector<GroupElement> window_;
    // y coordinates in draw order, and per x-coordinate the (y index, coeff)
    // pairs of the convolution with fhat.
    std::size_t y_count_ = 0;
    std::vector<std::vector<std::pair<std::size_t, double>>> x_terms_;
    // Per window slot: (x index, integer f^* coefficient).
    std::vector<std::vector<std::pair<std::size_t, double>>> p_terms_;
    double x_err_ = 0.0;

    std::uint64_t attempts_ = 0;
    std::uint64_t rejections_ = 0;
};

struct SamplerSpec {
    enum class Kind { Bernoulli, FixedPoints } kind = Kind::Bernoulli;
    int bernoulli_n = 100;
    QuotientParams params;  // FixedPoints only
};

// Empirical window marginal from `samples` draws of the chosen sampler (one
// tuple per draw, taken at the identity coset on the fixed-point route).
WindowDistribution reference_marginal(const RingElement& f, const std::vector<GroupElement>& window,
                                      const SamplerSpec& sampler, std::int64_t samples, Rng& rng);

}  // namespace algdyn
