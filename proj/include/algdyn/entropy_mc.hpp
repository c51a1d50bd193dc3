#pragma once

#include <cstdint>
#include <vector>

#include "algdyn/dynamics.hpp"
#include "algdyn/group_ring.hpp"
#include "algdyn/groups.hpp"
#include "algdyn/quotient_op.hpp"
#include "algdyn/rng.hpp"

namespace algdyn {

struct EnumOptions {
    std::uint64_t enumeration_cap = 100000000;  // max full-configuration count
    std::uint64_t tuple_space_cap = 1u << 22;   // max (2M+1)^|W| tuple codes
    std::uint64_t fix_enum_cap = 1000000;       // exact fixed-point pass limit
    std::int64_t fix_sample_n = 20000;          // fallback sample size
    int threads = 1;
};

// Exhaustive count of configurations psi: cosets -> {-M..M} whose empirical
// window-tuple distribution is strictly epsilon-close (l1) to the reference.
struct MicrocountReport {
    std::int64_t index = 0;  // number of cosets N
    std::vector<GroupElement> window;
    mpq_class epsilon;
    int alphabet_M = 0;
    mpz_class count;
    double log_count_over_index = 0.0;
    mpz_class fix_count;
    double bound_value = 0.0;  // combinatorial upper bound (+inf if loose case)
    WindowDistribution reference;
};

MicrocountReport exhaustive_model_count(const RingElement& f, const FiniteQuotient& q,
                                        const std::vector<GroupElement>& window,
                                        const WindowDistribution& reference,
                                        const mpq_class& epsilon, const EnumOptions& opt);

// How many fixed points have epsilon-good encodings. Above the enumeration
// limit this falls back to sampling and reports exact = false (a scaled
// estimate, not a certified count).
struct FixedPointTally {
    mpz_class matches;
    mpz_class fix_count;
    bool exact = true;
};

FixedPointTally count_encoded_fixed_points(const RingElement& f, const FiniteQuotient& q,
                                           const std::vector<GroupElement>& window,
                                           const WindowDistribution& reference,
                                           const mpq_class& epsilon, const EnumOptions& opt,
                                           Rng& rng);

// Monte-Carlo estimate of the model count for spaces too large to enumerate.
// Reports a 95% Wilson interval on the passing fraction; never used by the
// acceptance checks.
struct SampledModelCount {
    std::int64_t samples = 0;
    std::int64_t hits = 0;
    double fraction = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

SampledModelCount sampled_model_count(const RingElement& f, const FiniteQuotient& q,
                                      const std::vector<GroupElement>& window,
                                      const WindowDistribution& reference,
                                      const mpq_class& epsilon, std::int64_t samples, Rng& rng);

// H = -sum p log p (nats); masses must be nonnegative and sum to exactly 1.
double shannon_entropy(const std::vector<mpq_class>& masses);
double shannon_entropy(const WindowDistribution& d);

// H(x) = -x log x - (1-x) log(1-x) on [0,1], 0 at the endpoints.
double binary_entropy(double x);

// Checks count <= fix_count * C(N, floor(t*N)) * (2M+1)^(t*N) with
// t = 2 * epsilon * |supp f|, exactly (both sides raised to the denominator
// of t*N). Only applicable when t < 1.
struct BoundCheck {
    bool applicable = false;
    bool holds = false;
    mpq_class two_eps_s;
    mpz_class ball_radius;  // floor(t * N)
    double bound_value = 0.0;
    double log_count_per_index = 0.0;
    double stirling_rhs_per_index = 0.0;  // log(fix)/N + H(t) + t*log(2M+1)
};

BoundCheck model_count_bound_check(const MicrocountReport& report, const RingElement& f);

}  // namespace algdyn
