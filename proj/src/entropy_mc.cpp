#include "algdyn/entropy_mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "algdyn/util.hpp"

namespace algdyn {

namespace {

inline std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

// Everything the enumeration loop needs, with reference masses scaled to a
// common integer denominator so the epsilon test is a pure integer compare:
// sum_t |cnt_t * R - r_t * N| * eps_den  <  eps_num * N * R.
struct TupleTable {
    std::int64_t n = 0;  // cosets
    int m = 0;           // alphabet bound
    int base = 0;        // 2m + 1
    std::size_t side = 0;
    std::int64_t scale = 0;               // common denominator R
    std::vector<std::int64_t> ref_n;      // r_t * N per tuple code
    std::int64_t extra = 0;               // mass * N on out-of-alphabet tuples
    std::vector<std::vector<std::pair<int, std::int64_t>>> inc;  // pos -> (coset, place)
};

TupleTable build_table(const FiniteQuotient& q, const std::vector<GroupElement>& window,
                       const WindowDistribution& reference, int m, const EnumOptions& opt) {
    if (reference.window != window)
        fail("window_mismatch", "reference distribution uses a different window");
    reference.check_total();

    TupleTable t;
    t.n = q.index();
    t.m = m;
    t.base = 2 * m + 1;

    mpz_class side(1);
    for (std::size_t i = 0; i < window.size(); ++i) side *= t.base;
    if (side > mpz_class(static_cast<unsigned long>(opt.tuple_space_cap)))
        fail("cap_exceeded", "window tuple space exceeds the cap");
    t.side = side.get_ui();

    mpz_class r(1);
    for (const auto& [tu, p] : reference.probs)
        r = lcm(r, mpz_class(p.get_den()));
    mpz_class nr = t.n * r;
    if (!nr.fits_slong_p() || nr > (mpz_class(1) << 61))
        fail("cap_exceeded", "reference masses too fine for exact integer counting");
    t.scale = r.get_si();

    t.ref_n.assign(t.side, 0);
    std::vector<std::int64_t> place(window.size());
    {
        std::int64_t pv = 1;
        for (std::size_t i = 0; i < window.size(); ++i, pv *= t.base) place[i] = pv;
    }
    for (const auto& [tu, p] : reference.probs) {
        mpz_class rt = p.get_num() * (r / p.get_den()) * t.n;  // r_t * N
        std::int64_t v = rt.get_si();
        bool in_alpha = true;
        std::int64_t code = 0;
        for (std::size_t i = 0; i < tu.size(); ++i) {
            if (tu[i] > m || tu[i] < -m) {
                in_alpha = false;
                break;
            }
            code += (tu[i] + m) * place[i];
        }
        if (in_alpha)
            t.ref_n[static_cast<std::size_t>(code)] += v;
        else
            t.extra += v;
    }

    t.inc.assign(static_cast<std::size_t>(t.n), {});
    for (std::size_t i = 0; i < window.size(); ++i) {
        std::vector<int> table = q.translation_table(element_inv(window[i]));
        for (std::int64_t c = 0; c < t.n; ++c)
            t.inc[static_cast<std::size_t>(table[static_cast<std::size_t>(c)])].push_back(
                {static_cast<int>(c), place[i]});
    }
    return t;
}

// Lexicographic sweep over psi with the leading symbol fixed; the window
// statistic and the l1 discrepancy S are maintained incrementally per symbol
// change.
mpz_class enumerate_chunk(const TupleTable& t, int lead, std::int64_t eps_num,
                          std::int64_t eps_den) {
    std::vector<int> psi(static_cast<std::size_t>(t.n), -t.m);
    psi[0] = lead;
    std::vector<std::int32_t> cnt(t.side, 0);
    std::vector<std::int64_t> code(static_cast<std::size_t>(t.n), 0);
    for (std::int64_t p = 0; p < t.n; ++p)
        for (const auto& [c, pv] : t.inc[static_cast<std::size_t>(p)])
            code[static_cast<std::size_t>(c)] +=
                static_cast<std::int64_t>(psi[static_cast<std::size_t>(p)] + t.m) * pv;

    std::int64_t s = t.n * t.scale;  // value with all counts zero
    {
        std::set<std::int64_t> seen;
        for (std::int64_t c = 0; c < t.n; ++c) {
            std::int64_t cd = code[static_cast<std::size_t>(c)];
            ++cnt[static_cast<std::size_t>(cd)];
            seen.insert(cd);
        }
        for (std::int64_t cd : seen) {
            std::int64_t rn = t.ref_n[static_cast<std::size_t>(cd)];
            s += abs64(cnt[static_cast<std::size_t>(cd)] * t.scale - rn) - rn;
        }
    }

    const __int128 threshold = static_cast<__int128>(eps_num) * t.n * t.scale;
    auto apply = [&](std::int64_t pos, int delta) {
        for (const auto& [c, pv] : t.inc[static_cast<std::size_t>(pos)]) {
            std::int64_t old_code = code[static_cast<std::size_t>(c)];
            std::int64_t new_code = old_code + delta * pv;
            std::int64_t rn_old = t.ref_n[static_cast<std::size_t>(old_code)];
            std::int64_t rn_new = t.ref_n[static_cast<std::size_t>(new_code)];
            std::int32_t& co = cnt[static_cast<std::size_t>(old_code)];
            s -= abs64(static_cast<std::int64_t>(co) * t.scale - rn_old);
            --co;
            s += abs64(static_cast<std::int64_t>(co) * t.scale - rn_old);
            std::int32_t& cn = cnt[static_cast<std::size_t>(new_code)];
            s -= abs64(static_cast<std::int64_t>(cn) * t.scale - rn_new);
            ++cn;
            s += abs64(static_cast<std::int64_t>(cn) * t.scale - rn_new);
            code[static_cast<std::size_t>(c)] = new_code;
        }
    };

    mpz_class good = 0;
    for (;;) {
        if (static_cast<__int128>(s) * eps_den < threshold) ++good;
        std::int64_t p = t.n - 1;
        while (p >= 1 && psi[static_cast<std::size_t>(p)] == t.m) {
            apply(p, -2 * t.m);
            psi[static_cast<std::size_t>(p)] = -t.m;
            --p;
        }
        if (p < 1) break;
        apply(p, 1);
        psi[static_cast<std::size_t>(p)] += 1;
    }
    return good;
}

double bound_value_float(const mpz_class& fix, std::int64_t n, int m, const mpq_class& t_frac) {
    double t = t_frac.get_d();
    if (t >= 1.0) return std::numeric_limits<double>::infinity();
    double tn = t * static_cast<double>(n);
    double k = std::floor(tn);
    double lbinom = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(k + 1.0) -
                    std::lgamma(static_cast<double>(n) - k + 1.0);
    return std::exp(log_abs_mpz(fix) + lbinom + tn * std::log(2.0 * m + 1.0));
}

}  // namespace

MicrocountReport exhaustive_model_count(const RingElement& f, const FiniteQuotient& q,
                                        const std::vector<GroupElement>& window,
                                        const WindowDistribution& reference,
                                        const mpq_class& epsilon, const EnumOptions& opt) {
    if (epsilon <= 0) fail("out_of_range", "epsilon must be positive");
    if (!epsilon.get_num().fits_slong_p() || !epsilon.get_den().fits_slong_p())
        fail("out_of_range", "epsilon numerator/denominator too large");
    if (window.empty()) fail("out_of_range", "window must be nonempty");

    int m = bound_M_for(f);
    std::int64_t n = q.index();
    mpz_class space(1);
    for (std::int64_t i = 0; i < n; ++i) space *= 2 * m + 1;
    if (space > mpz_class(static_cast<unsigned long>(opt.enumeration_cap)))
        fail("cap_exceeded",
             "configuration space exceeds the enumeration cap; use sampled_model_count");

    TupleTable table = build_table(q, window, reference, m, opt);
    std::int64_t eps_num = epsilon.get_num().get_si();
    std::int64_t eps_den = epsilon.get_den().get_si();

    std::vector<mpz_class> goods(static_cast<std::size_t>(2 * m + 1));
    parallel_chunks(2 * m + 1, opt.threads, [&](int c) {
        goods[static_cast<std::size_t>(c)] = enumerate_chunk(table, -m + c, eps_num, eps_den);
    });
    mpz_class count = 0;
    for (const auto& g : goods) count += g;

    MicrocountReport rep;
    rep.index = n;
    rep.window = window;
    rep.epsilon = epsilon;
    rep.alphabet_M = m;
    rep.count = count;
    rep.log_count_over_index =
        count > 0 ? log_abs_mpz(count) / static_cast<double>(n)
                  : -std::numeric_limits<double>::infinity();
    rep.fix_count = fixed_point_count(f, q, DetOptions{64, opt.threads});
    rep.bound_value =
        bound_value_float(rep.fix_count, n, m, mpq_class(2) * epsilon * f.support_size());
    rep.reference = reference;
    return rep;
}

FixedPointTally count_encoded_fixed_points(const RingElement& f, const FiniteQuotient& q,
                                           const std::vector<GroupElement>& window,
                                           const WindowDistribution& reference,
                                           const mpq_class& epsilon, const EnumOptions& opt,
                                           Rng& rng) {
    if (epsilon <= 0) fail("out_of_range", "epsilon must be positive");
    FixedPointSpace space(f, q);
    int m = bound_M_for(f);
    LiftConfig cfg = lift_config_for(f, space.torus_den());

    FixedPointTally tally;
    tally.fix_count = space.count();

    auto qualifies = [&](const TorusPoint& x) {
        std::vector<std::int64_t> p = map_P(x, f, q, cfg);
        WindowDistribution wd = window_distribution(p, q, window, m);
        return l1_distance(wd, reference) < epsilon;
    };

    if (tally.fix_count <= mpz_class(static_cast<unsigned long>(opt.fix_enum_cap))) {
        std::vector<TorusPoint> pts = space.enumerate(opt.fix_enum_cap);
        mpz_class matches = 0;
        for (const auto& x : pts)
            if (qualifies(x)) ++matches;
        tally.matches = matches;
        tally.exact = true;
    } else {
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < opt.fix_sample_n; ++i)
            if (qualifies(space.sample(rng))) ++hits;
        tally.matches = tally.fix_count * hits / opt.fix_sample_n;
        tally.exact = false;
    }
    return tally;
}

SampledModelCount sampled_model_count(const RingElement& f, const FiniteQuotient& q,
                                      const std::vector<GroupElement>& window,
                                      const WindowDistribution& reference,
                                      const mpq_class& epsilon, std::int64_t samples, Rng& rng) {
    if (samples < 1) fail("out_of_range", "sample count must be >= 1");
    if (epsilon <= 0) fail("out_of_range", "epsilon must be positive");
    int m = bound_M_for(f);
    std::int64_t n = q.index();
    std::uint64_t base = static_cast<std::uint64_t>(2 * m + 1);

    SampledModelCount out;
    out.samples = samples;
    std::vector<std::int64_t> psi(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < samples; ++i) {
        for (auto& v : psi) v = static_cast<std::int64_t>(rng.below(base)) - m;
        WindowDistribution wd = window_distribution(psi, q, window, m);
        if (l1_distance(wd, reference) < epsilon) ++out.hits;
    }
    double ns = static_cast<double>(samples);
    double ph = static_cast<double>(out.hits) / ns;
    out.fraction = ph;
    const double z = 1.959963984540054;
    double z2 = z * z;
    double denom = 1.0 + z2 / ns;
    double center = (ph + z2 / (2.0 * ns)) / denom;
    double half = z * std::sqrt(ph * (1.0 - ph) / ns + z2 / (4.0 * ns * ns)) / denom;
    out.ci_lo = std::max(0.0, center - half);
    out.ci_hi = std::min(1.0, center + half);
    return out;
}

double shannon_entropy(const std::vector<mpq_class>& masses) {
    mpq_class total = 0;
    double h = 0.0;
    for (const auto& p : masses) {
        if (p < 0) fail("out_of_range", "negative probability mass");
        total += p;
        if (p == 0) continue;
        double pd = p.get_d();
        h -= pd * std::log(pd);
    }
    if (total != 1) fail("out_of_range", "masses must sum to 1");
    return h < 0.0 ? 0.0 : h;
}

double shannon_entropy(const WindowDistribution& d) {
    std::vector<mpq_class> masses;
    masses.reserve(d.probs.size());
    for (const auto& [t, p] : d.probs) masses.push_back(p);
    return shannon_entropy(masses);
}

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) fail("out_of_range", "binary entropy argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

BoundCheck model_count_bound_check(const MicrocountReport& report, const RingElement& f) {
    BoundCheck out;
    out.two_eps_s = mpq_class(2) * report.epsilon * f.support_size();
    if (out.two_eps_s >= 1) {
        out.applicable = false;
        return out;
    }
    out.applicable = true;

    std::int64_t n = report.index;
    mpq_class tn = out.two_eps_s * n;
    out.ball_radius = floor_rational(tn);

    if (!tn.get_den().fits_ulong_p() || tn.get_den() > 64)
        fail("out_of_range", "epsilon denominator too large for the exact bound check");
    unsigned long pw_den = tn.get_den().get_ui();
    if (!tn.get_num().fits_ulong_p())
        fail("out_of_range", "bound exponent too large");
    unsigned long pw_num = tn.get_num().get_ui();

    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n),
                 out.ball_radius.get_ui());
    mpz_class lhs, rhs_base, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), report.count.get_mpz_t(), pw_den);
    mpz_class fb = report.fix_count * binom;
    mpz_pow_ui(rhs_base.get_mpz_t(), fb.get_mpz_t(), pw_den);
    mpz_class alpha;
    mpz_ui_pow_ui(alpha.get_mpz_t(), static_cast<unsigned long>(2 * report.alphabet_M + 1),
                  pw_num);
    rhs = rhs_base * alpha;
    out.holds = lhs <= rhs;

    out.bound_value = bound_value_float(report.fix_count, n, report.alphabet_M, out.two_eps_s);
    out.log_count_per_index = report.count > 0
                                  ? log_abs_mpz(report.count) / static_cast<double>(n)
                                  : -std::numeric_limits<double>::infinity();
    double t = out.two_eps_s.get_d();
    out.stirling_rhs_per_index = log_abs_mpz(report.fix_count) / static_cast<double>(n) +
                                 binary_entropy(t) +
                                 t * std::log(2.0 * report.alphabet_M + 1.0);
    return out;
}

}  // namespace algdyn
