#include "algdyn/acceptance.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "algdyn/dynamics.hpp"
#include "algdyn/entropy_mc.hpp"
#include "algdyn/expansive.hpp"
#include "algdyn/fk_det.hpp"
#include "algdyn/group_ring.hpp"
#include "algdyn/groups.hpp"
#include "algdyn/intmat.hpp"
#include "algdyn/quotient_op.hpp"
#include "algdyn/rng.hpp"
#include "algdyn/snf.hpp"
#include "algdyn/torus.hpp"
#include "algdyn/util.hpp"

namespace algdyn {
namespace {

// Regression value for check 7: the exhaustive model count on Z/6 at
// epsilon = 2/5, window {e, a}, reference sampled at the pinned seed. The
// enumeration itself produced the number on its first run; it is frozen here
// so later changes to the counting path cannot drift silently.
constexpr const char* kFrozenCountEps25 = "18";

struct CheckFailure {
    std::string message;
};

void check(bool ok, const std::string& msg) {
    if (!ok) throw CheckFailure{msg};
}

RingElement make_elem(const GroupSpec& spec,
                      const std::vector<std::pair<std::string, int>>& terms) {
    RingElement f(spec);
    for (const auto& [word, c] : terms) f.add_term(parse_word(spec, word), c);
    return f;
}

QuotientParams cyclic(std::int64_t n) {
    QuotientParams p;
    p.moduli = {n};
    return p;
}

QuotientParams torus2(std::int64_t n1, std::int64_t n2) {
    QuotientParams p;
    p.moduli = {n1, n2};
    return p;
}

double rel_log_gap(double a, double b) {
    return std::fabs(a - b) / std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

std::string dstr(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- check 1: fixed-point counts on Z for f = a - 2e equal 2^n - 1 ---------

std::string crit_periodic_counts(int threads, json& out) {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = make_elem(z1, {{"(1)", 1}, {"e", -2}});
    DetOptions opt;
    opt.threads = threads;

    json rows = json::array();
    for (int n = 1; n <= 24; ++n) {
        auto q = build_quotient(z1, cyclic(n));
        mpz_class cnt = fixed_point_count(f, q, opt);
        mpz_class want = (mpz_class(1) << n) - 1;
        check(cnt == want, "count at n=" + std::to_string(n) + " is " + cnt.get_str() +
                               ", expected " + want.get_str());

        CharacterDet cd = character_determinant_abelian(f, {n});
        double ld = log_abs_mpz(cnt);
        check(rel_log_gap(cd.log_abs, ld) <= 1e-9,
              "character log-determinant disagrees at n=" + std::to_string(n));
        if (n <= 12) {
            check(cd.exact.has_value() && *cd.exact == cnt,
                  "character product failed to reconstruct the exact count at n=" +
                      std::to_string(n));
        }
        rows.push_back({{"n", n}, {"count", decimal(cnt)}, {"char_log", json_double(cd.log_abs)}});
    }

    // Brute force for n <= 3: every solution of x * f^* = 0 has coordinates
    // with denominator dividing the largest elementary divisor, which divides
    // 2^n - 1, so scanning that grid finds all of them.
    RingElement fstar = adjoint(f);
    for (int n = 1; n <= 3; ++n) {
        auto q = build_quotient(z1, cyclic(n));
        mpz_class big = (mpz_class(1) << n) - 1;
        std::int64_t den = big.get_si();
        std::vector<mpz_class> nums(static_cast<std::size_t>(n), 0);
        std::int64_t hits = 0;
        while (true) {
            TorusPoint x;
            x.den = den;
            x.num = nums;
            TorusPoint y = quotient_convolve(x, fstar, q);
            bool zero = true;
            for (const auto& v : y.num)
                if (v != 0) zero = false;
            if (zero) ++hits;
            int p = n - 1;
            while (p >= 0 && nums[static_cast<std::size_t>(p)] == den - 1) {
                nums[static_cast<std::size_t>(p)] = 0;
                --p;
            }
            if (p < 0) break;
            ++nums[static_cast<std::size_t>(p)];
        }
        check(hits == den, "brute-force solution count at n=" + std::to_string(n) + " is " +
                               std::to_string(hits) + ", expected " + std::to_string(den));
    }

    out["rows"] = rows;
    out["brute_force_max_n"] = 3;
    return "counts equal 2^n - 1 for n = 1..24; character products and brute-force "
           "torus enumeration agree";
}

// --- check 2: growth of log(count)/n converges to log 2 --------------------

std::string crit_growth_rate(int threads, json& out) {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = make_elem(z1, {{"(1)", 1}, {"e", -2}});
    std::vector<QuotientParams> family;
    for (int n = 2; n <= 24; ++n) family.push_back(cyclic(n));
    DetOptions opt;
    opt.threads = threads;

    GrowthSeries gs = growth_rate_series(f, z1, family, opt);
    check(gs.points.size() == family.size(), "series has the wrong length");

    json rows = json::array();
    double prev = -1.0;
    for (std::size_t i = 0; i < gs.points.size(); ++i) {
        const auto& pt = gs.points[i];
        int n = static_cast<int>(i) + 2;
        check(pt.index == n, "series index mismatch");
        check(pt.count == (mpz_class(1) << n) - 1, "series count mismatch at n=" + std::to_string(n));
        check(pt.log_count_over_index > prev,
              "log(count)/n not strictly increasing at n=" + std::to_string(n));
        prev = pt.log_count_over_index;
        rows.push_back({{"n", n}, {"log_count_over_n", json_double(pt.log_count_over_index)}});
    }
    double gap = std::fabs(gs.points.back().log_count_over_index - std::log(2.0));
    check(gap < 1e-5, "final growth-rate gap " + dstr(gap) + " is not below 1e-5");

    out["rows"] = rows;
    out["final_gap"] = json_double(gap);
    return "log(count)/n increases to log 2; final gap " + dstr(gap);
}

// --- check 3: determinant routes on the Z^2 five-point Laplacian -----------

std::string crit_laplacian_dets(int threads, json& out) {
    auto z2 = GroupSpec::free_abelian(2);
    RingElement f = make_elem(
        z2, {{"(0,0)", 5}, {"(1,0)", -1}, {"(-1,0)", -1}, {"(0,1)", -1}, {"(0,-1)", -1}});
    DetOptions opt;
    opt.threads = threads;

    // Exact integer agreement on every torus up to 3 x 3.
    for (std::int64_t n1 = 1; n1 <= 3; ++n1) {
        for (std::int64_t n2 = 1; n2 <= 3; ++n2) {
            auto q = build_quotient(z2, torus2(n1, n2));
            mpz_class cnt = fixed_point_count(f, q, opt);
            CharacterDet cd = character_determinant_abelian(f, {n1, n2});
            check(cd.exact.has_value() && *cd.exact == cnt,
                  "character and elimination determinants differ at " + std::to_string(n1) +
                      "x" + std::to_string(n2));
        }
    }

    // Relative log agreement while integer elimination stays affordable;
    // beyond 32 x 32 the cross-validated character product carries the value.
    json rows = json::array();
    for (std::int64_t n : {8, 16, 32}) {
        auto q = build_quotient(z2, torus2(n, n));
        mpz_class cnt = fixed_point_count(f, q, opt);
        double ld = log_abs_mpz(cnt);
        CharacterDet cd = character_determinant_abelian(f, {n, n});
        double rel = rel_log_gap(cd.log_abs, ld);
        check(rel <= 1e-9, "relative log gap " + dstr(rel) + " at " + std::to_string(n) + "x" +
                               std::to_string(n) + " exceeds 1e-9");
        rows.push_back({{"n", n},
                        {"log_det", json_double(ld)},
                        {"char_log", json_double(cd.log_abs)},
                        {"rel_gap", json_double(rel)}});
    }

    CharacterDet cd64 = character_determinant_abelian(f, {64, 64});
    double per_index = cd64.log_abs / 4096.0;
    double m512 = mahler_measure(f, 512);
    double m256 = mahler_measure(f, 256);
    double gap_integral = std::fabs(per_index - m512);
    double gap_grids = std::fabs(m512 - m256);
    check(gap_integral < 1e-3, "log det / index at 64x64 is " + dstr(gap_integral) +
                                   " away from the torus integral (limit 1e-3)");
    check(gap_grids < 1e-6,
          "quadrature at 256^2 and 512^2 differ by " + dstr(gap_grids) + " (limit 1e-6)");

    out["exact_grid_max"] = "3x3";
    out["rel_log_rows"] = rows;
    out["char_log_64"] = json_double(cd64.log_abs);
    out["per_index_64"] = json_double(per_index);
    out["mahler_512"] = json_double(m512);
    out["mahler_256"] = json_double(m256);
    out["gap_integral"] = json_double(gap_integral);
    out["gap_grids"] = json_double(gap_grids);
    return "elimination, character product, and torus integral agree (per-index gap " +
           dstr(gap_integral) + ")";
}

// --- check 4: random-matrix determinant and Smith-form cross-checks --------

std::string crit_integer_linear_algebra(std::uint64_t seed, int threads, json& out) {
    Rng rng = Rng(seed).child(4);
    int nonsingular = 0;
    for (int t = 0; t < 100; ++t) {
        int dim = 1 + static_cast<int>(rng.below(12));
        SparseIntMat m = SparseIntMat::zero(dim);
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                std::int64_t v = static_cast<std::int64_t>(rng.below(19)) - 9;
                if (v != 0) m.accumulate(r, c, mpz_class(static_cast<long>(v)));
            }
        }
        m.finalize();
        mpz_class d1 = det_bareiss(m);
        mpz_class d2 = det_modular(m, threads);
        check(d1 == d2, "fraction-free and modular determinants differ on instance " +
                            std::to_string(t) + " (dim " + std::to_string(dim) + ")");
        SmithDecomposition snf = smith_normal_form(m);
        check(snf.divisor_product() == abs(d1),
              "product of elementary divisors differs from |det| on instance " +
                  std::to_string(t));
        if (d1 != 0) ++nonsingular;
    }
    out["instances"] = 100;
    out["nonsingular"] = nonsingular;
    return "determinant routes and divisor products agree on 100 random matrices (" +
           std::to_string(nonsingular) + " nonsingular)";
}

// --- check 5: encode/decode roundtrip on sampled fixed points --------------

struct RoundtripInstance {
    std::string label;
    GroupSpec spec;
    RingElement f;
    QuotientParams params;
};

std::string crit_roundtrip(std::uint64_t seed, int threads, json& out) {
    auto z1 = GroupSpec::free_abelian(1);
    auto z2 = GroupSpec::free_abelian(2);
    auto heis = GroupSpec::heisenberg();
    auto f2 = GroupSpec::free_group(2);

    std::vector<RoundtripInstance> instances;
    instances.push_back({"Z mod 2520", z1, make_elem(z1, {{"e", 3}, {"(1)", -1}}), cyclic(2520)});
    instances.push_back({"Z^2 mod 12x12", z2,
                         make_elem(z2, {{"(0,0)", 5},
                                        {"(1,0)", -1},
                                        {"(-1,0)", -1},
                                        {"(0,1)", -1},
                                        {"(0,-1)", -1}}),
                         torus2(12, 12)});
    QuotientParams hp;
    hp.modulus = 3;
    instances.push_back({"Heisenberg mod 3", heis,
                         make_elem(heis, {{"(0,0,0)", 5},
                                          {"(1,0,0)", -1},
                                          {"(-1,0,0)", -1},
                                          {"(0,1,0)", -1},
                                          {"(0,-1,0)", -1}}),
                         hp});
    QuotientParams sp;
    sp.degree = 4;
    sp.generator_images = {{1, 2, 3, 0}, {1, 0, 2, 3}};
    instances.push_back(
        {"F2 to S4", f2,
         make_elem(f2, {{"e", 5}, {"a", -1}, {"b", -1}, {"a^-1", -1}, {"b^-1", -1}}), sp});

    const int kSamples = 1000;
    const int kChunks = 8;
    json rows = json::array();
    for (std::size_t idx = 0; idx < instances.size(); ++idx) {
        const auto& inst = instances[idx];
        DominanceCertificate cert = dominance_certificate(inst.f);
        check(cert.certified, inst.label + ": defining element is not dominance-certified");

        auto q = build_quotient(inst.spec, inst.params);
        FixedPointSpace space(inst.f, q);
        LiftConfig cfg = lift_config_for(inst.f, space.torus_den());
        Rng base = Rng(seed).child(50 + static_cast<std::uint64_t>(idx));

        // Per-sample child streams keyed by the sample number make the strided
        // chunk layout irrelevant to the draws.
        std::vector<std::int64_t> bad(kChunks, 0);
        parallel_chunks(kChunks, threads, [&](int chunk) {
            for (int s = chunk; s < kSamples; s += kChunks) {
                Rng sr = base.child(static_cast<std::uint64_t>(s));
                TorusPoint x = space.sample(sr);
                std::vector<std::int64_t> p = map_P(x, inst.f, q, cfg);
                bool ok = true;
                for (std::int64_t v : p)
                    if (v < -cfg.bound_M || v > cfg.bound_M) ok = false;
                std::vector<mpz_class> h;
                h.reserve(p.size());
                for (std::int64_t v : p) h.emplace_back(static_cast<long>(v));
                if (!(map_xi(h, space) == x)) ok = false;
                if (!ok) ++bad[static_cast<std::size_t>(chunk)];
            }
        });
        std::int64_t failures = 0;
        for (auto b : bad) failures += b;
        check(failures == 0,
              inst.label + ": " + std::to_string(failures) + " of " + std::to_string(kSamples) +
                  " samples failed the roundtrip");
        rows.push_back({{"family", inst.label},
                        {"index", q.index()},
                        {"count_digits", space.count().get_str().size()},
                        {"bound_M", cfg.bound_M},
                        {"samples", kSamples},
                        {"failures", failures}});
    }
    out["rows"] = rows;
    return "xi(P(x)) = x exactly on 1000 uniform fixed points in each of 4 families";
}

// --- check 6: noise-model marginal vs fixed-point marginal -----------------

std::string crit_sampler_agreement(std::uint64_t seed, json& out) {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = make_elem(z1, {{"e", 3}, {"(1)", -1}});
    std::vector<GroupElement> window = {parse_word(z1, "e"), parse_word(z1, "(1)"),
                                        parse_word(z1, "(2)")};
    const std::int64_t kDraws = 100000;

    SamplerSpec bern;
    bern.kind = SamplerSpec::Kind::Bernoulli;
    bern.bernoulli_n = 100;
    Rng rb = Rng(seed).child(61);
    WindowDistribution wb = reference_marginal(f, window, bern, kDraws, rb);

    SamplerSpec fixed;
    fixed.kind = SamplerSpec::Kind::FixedPoints;
    fixed.params = cyclic(2520);
    Rng rf = Rng(seed).child(62);
    WindowDistribution wf = reference_marginal(f, window, fixed, kDraws, rf);

    mpq_class l1 = l1_distance(wb, wf);
    double tv = l1.get_d() / 2.0;
    check(l1 <= mpq_class(1, 10),
          "total variation " + dstr(tv) + " between the samplers exceeds 0.05");

    out["draws"] = kDraws;
    out["noise_n"] = 100;
    out["l1"] = rational(l1);
    out["tv"] = json_double(tv);
    out["noise_marginal"] = window_distribution_json(wb);
    out["fixed_point_marginal"] = window_distribution_json(wf);
    return "total variation between noise-model and fixed-point marginals = " + dstr(tv) +
           " (limit 0.05)";
}

// --- check 7: model-count soundness, monotonicity, and the bound -----------

std::string crit_model_counts(std::uint64_t seed, int threads, json& out) {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = make_elem(z1, {{"(1)", 1}, {"e", -2}});
    auto q6 = build_quotient(z1, cyclic(6));
    std::vector<GroupElement> window = {parse_word(z1, "e"), parse_word(z1, "(1)")};

    SamplerSpec fixed;
    fixed.kind = SamplerSpec::Kind::FixedPoints;
    fixed.params = cyclic(2520);
    Rng r71 = Rng(seed).child(71);
    WindowDistribution ref = reference_marginal(f, window, fixed, 100000, r71);

    EnumOptions opt;
    opt.threads = threads;

    const std::vector<mpq_class> epsilons = {mpq_class(1, 5), mpq_class(2, 5), mpq_class(4, 5),
                                             mpq_class(8, 5)};
    json rows = json::array();
    mpz_class prev = -1;
    mpz_class count_at_2_5 = 0;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const mpq_class& eps = epsilons[i];
        MicrocountReport rep = exhaustive_model_count(f, q6, window, ref, eps, opt);
        check(rep.count >= prev, "model count is not monotone in epsilon at " + rational(eps));
        prev = rep.count;
        check(rep.fix_count == 63, "fixed-point count on Z/6 should be 63");

        Rng rc = Rng(seed).child(730 + static_cast<std::uint64_t>(i));
        FixedPointTally tally = count_encoded_fixed_points(f, q6, window, ref, eps, opt, rc);
        check(tally.exact, "encoded fixed points should be exactly enumerable here");
        check(rep.count >= tally.matches,
              "model count is below the encoded-fixed-point count at epsilon " + rational(eps));

        if (eps == mpq_class(2, 5)) count_at_2_5 = rep.count;
        rows.push_back({{"epsilon", rational(eps)},
                        {"count", decimal(rep.count)},
                        {"encoded_matches", decimal(tally.matches)}});
    }

    std::string frozen = kFrozenCountEps25;
    check(frozen != "-1" && decimal(count_at_2_5) == frozen,
          "exhaustive count at epsilon 2/5 is " + decimal(count_at_2_5) +
              "; pinned regression value is " + frozen);

    // Enlarging the window can only cut the count.
    WindowDistribution ref_e = ref.marginal_to({parse_word(z1, "e")});
    MicrocountReport rep_e =
        exhaustive_model_count(f, q6, {parse_word(z1, "e")}, ref_e, mpq_class(2, 5), opt);
    check(rep_e.count >= count_at_2_5, "count grew when the window was enlarged");

    // Combinatorial bound on a window chosen by the greedy selector.
    TruncatedInverse fh = fhat(f, mpq_class(1, 1000000));
    std::vector<GroupElement> wsel = select_window(fh, bound_M_for(f), mpq_class(1, 10));
    check(!wsel.empty() && wsel.size() <= 6,
          "selected window has unexpected size " + std::to_string(wsel.size()));
    Rng r72 = Rng(seed).child(72);
    WindowDistribution ref_sel = reference_marginal(f, wsel, fixed, 100000, r72);
    MicrocountReport rep_sel = exhaustive_model_count(f, q6, wsel, ref_sel, mpq_class(1, 5), opt);
    BoundCheck bc = model_count_bound_check(rep_sel, f);
    check(bc.applicable, "bound check inapplicable: 2 * eps * |supp f| = " + rational(bc.two_eps_s));
    check(bc.holds, "combinatorial bound violated on the selected window");

    json wsel_words = json::array();
    for (const auto& w : wsel) wsel_words.push_back(format_word(w));
    out["rows"] = rows;
    out["window_e_count"] = decimal(rep_e.count);
    out["frozen_count_eps_2_5"] = decimal(count_at_2_5);
    out["selected_window"] = wsel_words;
    out["selected_count"] = decimal(rep_sel.count);
    out["bound"] = {{"two_eps_s", rational(bc.two_eps_s)},
                    {"ball_radius", decimal(bc.ball_radius)},
                    {"log_count_per_index", json_double(bc.log_count_per_index)},
                    {"stirling_rhs_per_index", json_double(bc.stirling_rhs_per_index)}};
    return "counts monotone in epsilon and window; count " + decimal(count_at_2_5) +
           " at epsilon 2/5 matches the pinned value; combinatorial bound holds";
}

// --- check 8: certification margins and truncated-inverse residuals --------

std::string crit_certification(json& out) {
    auto z1 = GroupSpec::free_abelian(1);
    auto f2 = GroupSpec::free_group(2);
    RingElement good = make_elem(z1, {{"e", 3}, {"(1)", -1}});
    RingElement lap =
        make_elem(f2, {{"e", 5}, {"a", -1}, {"b", -1}, {"a^-1", -1}, {"b^-1", -1}});
    RingElement bad = make_elem(z1, {{"e", 1}, {"(1)", -1}});

    DominanceCertificate cg = dominance_certificate(good);
    check(cg.certified && cg.margin == mpq_class(2, 3),
          "margin for 3e - a should be 2/3, got " + rational(cg.margin));
    DominanceCertificate cl = dominance_certificate(lap);
    check(cl.certified && cl.margin == mpq_class(1, 5),
          "margin for the free-group Laplacian should be 1/5, got " + rational(cl.margin));
    DominanceCertificate cb = dominance_certificate(bad);
    check(!cb.certified, "1e - a must not be certified");

    json rows = json::array();
    mpq_class tol(1, 1);
    for (int k = 1; k <= 6; ++k) {
        tol /= 10;
        TruncatedInverse inv = neumann_inverse(good, tol);
        check(inv.tail_bound <= tol, "tail bound exceeds the tolerance at 10^-" + std::to_string(k));
        mpq_class res = inverse_residual(good, inv);
        check(res <= l1_norm(good) * inv.tail_bound,
              "residual exceeds ||f||_1 * tail at 10^-" + std::to_string(k));
        rows.push_back({{"tol", rational(tol)},
                        {"order", inv.order},
                        {"tail_bound", rational(inv.tail_bound)},
                        {"residual", rational(res)}});
    }

    TruncatedInverse invl = neumann_inverse(lap, mpq_class(1, 10));
    check(invl.tail_bound <= mpq_class(1, 10), "free-group tail bound exceeds 1/10");
    mpq_class resl = inverse_residual(lap, invl);
    check(resl <= l1_norm(lap) * invl.tail_bound, "free-group residual exceeds ||f||_1 * tail");

    out["margins"] = {{"dominant", rational(cg.margin)}, {"free_group_laplacian", rational(cl.margin)}};
    out["rows"] = rows;
    out["free_group"] = {{"order", invl.order},
                         {"support", invl.approx.support_size()},
                         {"tail_bound", rational(invl.tail_bound)},
                         {"residual", rational(resl)}};
    return "margins 2/3 and 1/5, non-dominant symbol rejected, residuals within "
           "||f||_1 * tail at every tolerance";
}

// ---------------------------------------------------------------------------

struct PayloadRun {
    std::vector<CriterionResult> results;
    json payload;
};

CriterionResult run_one(int id, const std::string& name, json& slot,
                        const std::function<std::string(json&)>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    try {
        r.details = body(slot);
        r.passed = true;
    } catch (const CheckFailure& cf) {
        r.passed = false;
        r.details = cf.message;
        slot["failed"] = cf.message;
    } catch (const Error& e) {
        r.passed = false;
        r.details = std::string("error ") + e.what();
        slot["failed"] = r.details;
    }
    return r;
}

PayloadRun run_criteria(std::uint64_t seed, int threads) {
    PayloadRun pr;
    pr.payload["seed"] = seed;
    pr.results.push_back(run_one(1, "periodic point counts match the closed form on Z",
                                 pr.payload["01_periodic_counts"],
                                 [&](json& j) { return crit_periodic_counts(threads, j); }));
    pr.results.push_back(run_one(2, "growth rate converges to log 2 on Z",
                                 pr.payload["02_growth_rate"],
                                 [&](json& j) { return crit_growth_rate(threads, j); }));
    pr.results.push_back(run_one(3, "determinant routes agree on the Z^2 Laplacian",
                                 pr.payload["03_laplacian_determinants"],
                                 [&](json& j) { return crit_laplacian_dets(threads, j); }));
    pr.results.push_back(run_one(4, "integer determinant and Smith form cross-checks",
                                 pr.payload["04_integer_linear_algebra"],
                                 [&](json& j) { return crit_integer_linear_algebra(seed, threads, j); }));
    pr.results.push_back(run_one(5, "encode/decode roundtrip on sampled fixed points",
                                 pr.payload["05_roundtrip"],
                                 [&](json& j) { return crit_roundtrip(seed, threads, j); }));
    pr.results.push_back(run_one(6, "noise-model and fixed-point window marginals agree",
                                 pr.payload["06_sampler_agreement"],
                                 [&](json& j) { return crit_sampler_agreement(seed, j); }));
    pr.results.push_back(run_one(7, "model-count soundness, monotonicity, and bound",
                                 pr.payload["07_model_counts"],
                                 [&](json& j) { return crit_model_counts(seed, threads, j); }));
    pr.results.push_back(run_one(8, "certification margins and truncated-inverse residuals",
                                 pr.payload["08_certification"],
                                 [&](json& j) { return crit_certification(j); }));
    return pr;
}

}  // namespace

AcceptanceRun run_acceptance(std::uint64_t seed) {
    // Checks 1-8 run four times (twice serial, twice with four workers); the
    // serialized payloads must match byte for byte, which is check 9.
    const int plan[4] = {1, 1, 4, 4};
    std::vector<std::string> dumps;
    AcceptanceRun out;
    for (int i = 0; i < 4; ++i) {
        PayloadRun pr = run_criteria(seed, plan[i]);
        if (i == 0) {
            out.results = pr.results;
            out.payload = pr.payload;
        }
        dumps.push_back(pr.payload.dump(2));
    }

    CriterionResult c9;
    c9.id = 9;
    c9.name = "byte-identical results across reruns and thread counts";
    c9.passed = dumps[1] == dumps[0] && dumps[2] == dumps[0] && dumps[3] == dumps[0];
    if (c9.passed) {
        c9.details = "4 runs (threads 1,1,4,4) produced identical " +
                     std::to_string(dumps[0].size()) + "-byte payloads";
    } else {
        std::string diverged;
        for (int i = 1; i < 4; ++i)
            if (dumps[static_cast<std::size_t>(i)] != dumps[0])
                diverged += (diverged.empty() ? "" : ", ") + std::to_string(i + 1);
        c9.details = "payloads of run(s) " + diverged + " differ from run 1";
    }
    out.results.push_back(c9);

    out.all_passed = true;
    for (const auto& r : out.results)
        if (!r.passed) out.all_passed = false;
    return out;
}

}  // namespace algdyn
