#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "algdyn/dynamics.hpp"
#include "algdyn/entropy_mc.hpp"
#include "algdyn/group_ring.hpp"
#include "algdyn/groups.hpp"
#include "algdyn/quotient_op.hpp"
#include "algdyn/rng.hpp"
#include "algdyn/util.hpp"

using namespace algdyn;

namespace {

RingElement elem(const GroupSpec& spec, const std::vector<std::pair<std::string, mpq_class>>& t) {
    RingElement f(spec);
    for (const auto& [w, c] : t) f.add_term(parse_word(spec, w), c);
    return f;
}

FiniteQuotient zq(std::int64_t n) {
    QuotientParams p;
    p.moduli = {n};
    return build_quotient(GroupSpec::free_abelian(1), p);
}

WindowDistribution point_mass(const std::vector<GroupElement>& w, int m) {
    WindowDistribution d;
    d.window = w;
    d.alphabet_M = m;
    d.probs[std::vector<int>(w.size(), 0)] = 1;
    return d;
}

}  // namespace

TEST_CASE("epsilon above the l1 diameter counts every configuration") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});  // M = 3
    auto q = zq(4);
    std::vector<GroupElement> w = {parse_word(z1, "e")};
    EnumOptions opt;
    MicrocountReport rep = exhaustive_model_count(f, q, w, point_mass(w, 3), 3, opt);
    CHECK(rep.count == 2401);  // 7^4
    CHECK(rep.alphabet_M == 3);
    CHECK(rep.index == 4);
    CHECK(rep.fix_count == 15);  // 2^4 - 1
    CHECK(rep.log_count_over_index == doctest::Approx(std::log(7.0)).epsilon(1e-12));
}

TEST_CASE("the incremental counter matches a direct rational recount") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});
    auto q = zq(3);
    std::vector<GroupElement> w = {parse_word(z1, "e"), parse_word(z1, "(1)")};
    int m = bound_M_for(f);
    REQUIRE(m == 3);

    // Reference: the exact window marginal of one encoded fixed point.
    FixedPointSpace space(f, q);
    LiftConfig lc = lift_config_for(f, space.torus_den());
    std::vector<TorusPoint> pts = space.enumerate(100);
    REQUIRE(pts.size() == 7);
    WindowDistribution ref = window_distribution(map_P(pts[3], f, q, lc), q, w, m);

    for (mpq_class eps : {mpq_class(1, 5), mpq_class(2, 5), mpq_class(6, 5)}) {
        EnumOptions opt;
        MicrocountReport rep = exhaustive_model_count(f, q, w, ref, eps, opt);

        // Oracle: walk all 7^3 configurations with an odometer and redo the
        // epsilon test with exact rationals, no shared code with the counter.
        mpz_class direct = 0;
        std::vector<std::int64_t> psi(3, -m);
        for (;;) {
            if (l1_distance(window_distribution(psi, q, w, m), ref) < eps) ++direct;
            std::size_t i = 0;
            while (i < psi.size() && psi[i] == m) psi[i++] = -m;
            if (i == psi.size()) break;
            ++psi[i];
        }
        CHECK(rep.count == direct);
        CHECK(rep.count > 0);
        CHECK(rep.count <= 343);
    }
}

TEST_CASE("model counts grow with epsilon") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});
    auto q = zq(4);
    std::vector<GroupElement> w = {parse_word(z1, "e"), parse_word(z1, "(1)")};
    FixedPointSpace space(f, q);
    LiftConfig lc = lift_config_for(f, space.torus_den());
    WindowDistribution ref =
        window_distribution(map_P(space.enumerate(100).front(), f, q, lc), q, w, 3);

    EnumOptions opt;
    mpz_class prev = 0;
    for (mpq_class eps : {mpq_class(1, 10), mpq_class(1, 2), mpq_class(1), mpq_class(5, 2)}) {
        mpz_class c = exhaustive_model_count(f, q, w, ref, eps, opt).count;
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(prev == 2401);  // the last epsilon exceeds the diameter
}

TEST_CASE("encoded fixed points are among the counted configurations") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});
    auto q = zq(4);
    std::vector<GroupElement> w = {parse_word(z1, "e"), parse_word(z1, "(1)")};
    FixedPointSpace space(f, q);
    LiftConfig lc = lift_config_for(f, space.torus_den());
    WindowDistribution ref =
        window_distribution(map_P(space.enumerate(100).front(), f, q, lc), q, w, 3);

    EnumOptions opt;
    Rng rng(5);
    for (mpq_class eps : {mpq_class(1, 4), mpq_class(3, 4)}) {
        MicrocountReport rep = exhaustive_model_count(f, q, w, ref, eps, opt);
        FixedPointTally tally = count_encoded_fixed_points(f, q, w, ref, eps, opt, rng);
        CHECK(tally.exact);
        CHECK(tally.fix_count == 15);
        // The encoding is injective, so qualifying fixed points inject into
        // the qualifying configurations.
        CHECK(tally.matches <= rep.count);
    }
    // With the reference taken from a real encoded point, the point itself
    // qualifies at any positive epsilon.
    FixedPointTally tiny = count_encoded_fixed_points(f, q, w, ref, mpq_class(1, 100), opt, rng);
    CHECK(tiny.matches >= 1);
    CHECK(exhaustive_model_count(f, q, w, ref, mpq_class(1, 100), opt).count >= 1);
}

TEST_CASE("the enumeration cap is enforced") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});
    auto q = zq(16);  // 7^16 ~ 3.3e13 configurations
    std::vector<GroupElement> w = {parse_word(z1, "e")};
    EnumOptions opt;
    CHECK_THROWS_WITH_AS(exhaustive_model_count(f, q, w, point_mass(w, 3), 1, opt),
                         doctest::Contains("cap_exceeded"), Error);
}

TEST_CASE("references over a different window are rejected") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});
    auto q = zq(3);
    std::vector<GroupElement> w = {parse_word(z1, "e")};
    std::vector<GroupElement> w2 = {parse_word(z1, "(1)")};
    EnumOptions opt;
    CHECK_THROWS_WITH_AS(exhaustive_model_count(f, q, w, point_mass(w2, 3), 1, opt),
                         doctest::Contains("window"), Error);
}

TEST_CASE("sampling agrees with exhaustive counting on a small space") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});
    auto q = zq(3);
    std::vector<GroupElement> w = {parse_word(z1, "e"), parse_word(z1, "(1)")};
    FixedPointSpace space(f, q);
    LiftConfig lc = lift_config_for(f, space.torus_den());
    WindowDistribution ref =
        window_distribution(map_P(space.enumerate(100).front(), f, q, lc), q, w, 3);

    EnumOptions opt;
    mpq_class eps(2, 5);
    MicrocountReport rep = exhaustive_model_count(f, q, w, ref, eps, opt);
    double truth = mpq_class(rep.count, 343).get_d();

    Rng rng(77);
    SampledModelCount mc = sampled_model_count(f, q, w, ref, eps, 20000, rng);
    CHECK(mc.samples == 20000);
    CHECK(mc.hits >= 0);
    CHECK(mc.hits <= mc.samples);
    CHECK(mc.ci_lo <= mc.fraction);
    CHECK(mc.fraction <= mc.ci_hi);
    // A 95% interval at n = 20000 should comfortably cover the true fraction.
    CHECK(mc.ci_lo <= truth + 1e-12);
    CHECK(mc.ci_hi >= truth - 1e-12);

    // Epsilon above the diameter: every draw hits.
    SampledModelCount all = sampled_model_count(f, q, w, ref, mpq_class(5, 2), 100, rng);
    CHECK(all.hits == 100);
    CHECK(all.fraction == 1.0);
}

TEST_CASE("entropy helpers evaluate the standard values") {
    CHECK(shannon_entropy(std::vector<mpq_class>{1}) == 0.0);
    std::vector<mpq_class> uniform(8, mpq_class(1, 8));
    CHECK(shannon_entropy(uniform) == doctest::Approx(std::log(8.0)).epsilon(1e-14));
    std::vector<mpq_class> skew = {mpq_class(1, 4), mpq_class(3, 4)};
    double expect = 0.25 * std::log(4.0) + 0.75 * std::log(4.0 / 3.0);
    CHECK(shannon_entropy(skew) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_WITH_AS(shannon_entropy(std::vector<mpq_class>{mpq_class(1, 2)}),
                         doctest::Contains("out_of_range"), Error);
    CHECK_THROWS_WITH_AS(shannon_entropy(std::vector<mpq_class>{mpq_class(-1, 2), mpq_class(3, 2)}),
                         doctest::Contains("out_of_range"), Error);

    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(binary_entropy(0.1) == doctest::Approx(0.3250829733914482).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(binary_entropy(1.5), doctest::Contains("out_of_range"), Error);
}

TEST_CASE("the combinatorial bound holds where it applies") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});  // two support elements
    auto q = zq(5);
    std::vector<GroupElement> w = {parse_word(z1, "e"), parse_word(z1, "(1)")};
    FixedPointSpace space(f, q);
    LiftConfig lc = lift_config_for(f, space.torus_den());
    WindowDistribution ref =
        window_distribution(map_P(space.enumerate(100).front(), f, q, lc), q, w, 3);

    EnumOptions opt;
    MicrocountReport rep = exhaustive_model_count(f, q, w, ref, mpq_class(1, 5), opt);
    BoundCheck bc = model_count_bound_check(rep, f);
    CHECK(bc.applicable);  // 2 * (1/5) * 2 = 4/5 < 1
    CHECK(bc.two_eps_s == mpq_class(4, 5));
    CHECK(bc.ball_radius == 4);  // floor(4/5 * 5)
    CHECK(bc.holds);
    CHECK(bc.log_count_per_index <= std::log(bc.bound_value) / 5.0 + 1e-9);
    CHECK(bc.stirling_rhs_per_index > 0.0);

    // 2 * (2/5) * 2 = 8/5 >= 1: out of the bound's range.
    MicrocountReport rep2 = exhaustive_model_count(f, q, w, ref, mpq_class(2, 5), opt);
    BoundCheck bc2 = model_count_bound_check(rep2, f);
    CHECK(!bc2.applicable);
    CHECK(!bc2.holds);
}
