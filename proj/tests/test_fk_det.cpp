#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "algdyn/fk_det.hpp"
#include "algdyn/group_ring.hpp"
#include "algdyn/groups.hpp"
#include "algdyn/quotient_op.hpp"
#include "algdyn/util.hpp"

using namespace algdyn;

namespace {

RingElement elem(const GroupSpec& spec, const std::vector<std::pair<std::string, mpq_class>>& t) {
    RingElement f(spec);
    for (const auto& [w, c] : t) f.add_term(parse_word(spec, w), c);
    return f;
}

}  // namespace

TEST_CASE("character product reconstructs small determinants exactly") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});
    for (int n = 1; n <= 12; ++n) {
        CharacterDet cd = character_determinant_abelian(f, {n});
        REQUIRE(cd.exact.has_value());
        CHECK(*cd.exact == (mpz_class(1) << n) - 1);
    }
}

TEST_CASE("five-point Laplacian on the 2x2 torus has determinant 225") {
    auto z2 = GroupSpec::free_abelian(2);
    RingElement f = elem(z2, {{"(0,0)", 5},
                              {"(1,0)", -1},
                              {"(-1,0)", -1},
                              {"(0,1)", -1},
                              {"(0,-1)", -1}});
    // Character values 5 - 2cos(pi k1) - 2cos(pi k2): 1, 5, 5, 9.
    QuotientParams p;
    p.moduli = {2, 2};
    auto q = build_quotient(z2, p);
    CHECK(fixed_point_count(f, q, DetOptions{}) == 225);
    CharacterDet cd = character_determinant_abelian(f, {2, 2});
    REQUIRE(cd.exact.has_value());
    CHECK(*cd.exact == 225);
}

TEST_CASE("character log agrees with the exact route within its error bound") {
    auto z2 = GroupSpec::free_abelian(2);
    RingElement f = elem(z2, {{"(0,0)", 5},
                              {"(1,0)", -1},
                              {"(-1,0)", -1},
                              {"(0,1)", -1},
                              {"(0,-1)", -1}});
    for (std::int64_t n : {4, 6, 10}) {
        QuotientParams p;
        p.moduli = {n, n};
        auto q = build_quotient(z2, p);
        double exact_log = log_abs_mpz(fixed_point_count(f, q, DetOptions{}));
        CharacterDet cd = character_determinant_abelian(f, {n, n});
        CHECK(std::fabs(cd.log_abs - exact_log) < 1e-10 * std::max(1.0, exact_log));
    }
}

TEST_CASE("character route refuses symbols with vanishing values") {
    auto z1 = GroupSpec::free_abelian(1);
    // Symbol of 1_e - 1_a vanishes at the trivial character.
    CHECK_THROWS_AS(character_determinant_abelian(elem(z1, {{"e", 1}, {"(1)", -1}}), {4}), Error);
}

TEST_CASE("quadrature reproduces classical integrals") {
    auto z1 = GroupSpec::free_abelian(1);
    // mean of log|c - z| over the unit circle is log|c| for |c| > 1
    CHECK(mahler_measure(elem(z1, {{"e", 3}, {"(1)", -1}}), 4096) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(mahler_measure(elem(z1, {{"(1)", 1}, {"e", -2}}), 4096) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // 4 - z - z^-1 has measure log(2 + sqrt 3)
    CHECK(mahler_measure(elem(z1, {{"e", 4}, {"(1)", -1}, {"(-1)", -1}}), 4096) ==
          doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("quadrature grids converge geometrically for zero-free symbols") {
    auto z2 = GroupSpec::free_abelian(2);
    RingElement f = elem(z2, {{"(0,0)", 5},
                              {"(1,0)", -1},
                              {"(-1,0)", -1},
                              {"(0,1)", -1},
                              {"(0,-1)", -1}});
    double a = mahler_measure(f, 128);
    double b = mahler_measure(f, 256);
    CHECK(std::fabs(a - b) < 1e-9);
}

TEST_CASE("quadrature refuses symbols vanishing on the torus") {
    auto z1 = GroupSpec::free_abelian(1);
    CHECK_THROWS_AS(mahler_measure(elem(z1, {{"e", 1}, {"(1)", -1}}), 64), Error);
}

TEST_CASE("counts are invariant under translating the symbol") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});
    RingElement shifted = convolve(elem(z1, {{"(3)", 1}}), f);
    QuotientParams p;
    p.moduli = {7};
    auto q = build_quotient(GroupSpec::free_abelian(1), p);
    CHECK(fixed_point_count(f, q, DetOptions{}) == fixed_point_count(shifted, q, DetOptions{}));
}

TEST_CASE("growth-rate report converges to the torus integral") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"(1)", 1}, {"e", -2}});
    std::vector<QuotientParams> fam;
    for (int n = 4; n <= 16; ++n) {
        QuotientParams p;
        p.moduli = {n};
        fam.push_back(p);
    }
    FkReport rep = fk_estimate(f, GroupSpec::free_abelian(1), fam, 512, DetOptions{});
    REQUIRE(rep.series.size() == 13);
    CHECK(rep.oracle_kind == "mahler");
    REQUIRE(rep.oracle.has_value());
    CHECK(*rep.oracle == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    REQUIRE(rep.gap.has_value());
    CHECK(*rep.gap < 1e-4);
    CHECK(rep.series.back().count_dec == mpz_class((mpz_class(1) << 16) - 1).get_str());
    // log(2^n - 1)/n increases towards log 2.
    for (std::size_t i = 0; i + 1 < rep.series.size(); ++i)
        CHECK(rep.series[i].log_det_over_index < rep.series[i + 1].log_det_over_index);
}
