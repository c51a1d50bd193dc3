#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "algdyn/expansive.hpp"
#include "algdyn/group_ring.hpp"
#include "algdyn/groups.hpp"

using namespace algdyn;

namespace {

RingElement elem(const GroupSpec& spec, const std::vector<std::pair<std::string, mpq_class>>& t) {
    RingElement f(spec);
    for (const auto& [w, c] : t) f.add_term(parse_word(spec, w), c);
    return f;
}

}  // namespace

TEST_CASE("dominance margins are exact rationals") {
    auto z1 = GroupSpec::free_abelian(1);
    auto cert = dominance_certificate(elem(z1, {{"e", 3}, {"(1)", -1}}));
    CHECK(cert.certified);
    CHECK(cert.margin == mpq_class(2, 3));

    auto f2 = GroupSpec::free_group(2);
    auto lap = dominance_certificate(
        elem(f2, {{"e", 5}, {"a", -1}, {"b", -1}, {"a^-1", -1}, {"b^-1", -1}}));
    CHECK(lap.certified);
    CHECK(lap.margin == mpq_class(1, 5));
}

TEST_CASE("symbols without strict dominance are rejected") {
    auto z1 = GroupSpec::free_abelian(1);
    CHECK(!dominance_certificate(elem(z1, {{"e", 1}, {"(1)", -1}})).certified);
    CHECK(!dominance_certificate(elem(z1, {{"(1)", 2}})).certified);  // no identity mass
    CHECK_THROWS_WITH_AS(dominance_certificate(RingElement::zero(z1)),
                         doctest::Contains("not_certified"), Error);
}

TEST_CASE("truncation order is minimal for the guaranteed tail bound") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"e", 3}, {"(1)", -1}});
    // tail(K) = (1/2) 3^-(K+1): first <= 1/1000 at K = 5.
    TruncatedInverse inv = neumann_inverse(f, mpq_class(1, 1000));
    CHECK(inv.order == 5);
    CHECK(inv.tail_bound == mpq_class(1, 2 * 729));
    CHECK(inv.leading_unit == 3);

    TruncatedInverse coarse = neumann_inverse(f, mpq_class(1, 10));
    CHECK(coarse.order == 1);  // tail(1) = 1/18 <= 1/10 < tail(0) = 1/6
}

TEST_CASE("residual of the truncated inverse obeys the l1 tail bound") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"e", 3}, {"(1)", -1}});
    mpq_class tol(1, 1);
    for (int k = 1; k <= 6; ++k) {
        tol /= 10;
        TruncatedInverse inv = neumann_inverse(f, tol);
        CHECK(inv.tail_bound <= tol);
        mpq_class res = inverse_residual(f, inv);
        CHECK(res <= l1_norm(f) * inv.tail_bound);
        CHECK(res > 0);  // truncation is never exact for this symbol
    }
}

TEST_CASE("free-group Laplacian inverse stays within the tail bound") {
    auto f2 = GroupSpec::free_group(2);
    RingElement f = elem(f2, {{"e", 5}, {"a", -1}, {"b", -1}, {"a^-1", -1}, {"b^-1", -1}});
    TruncatedInverse inv = neumann_inverse(f, mpq_class(1, 10));
    CHECK(inv.tail_bound <= mpq_class(1, 10));
    CHECK(inverse_residual(f, inv) <= l1_norm(f) * inv.tail_bound);
    // Support lives in the ball of radius `order` of the Cayley graph.
    CHECK(inv.approx.support_size() > 1000);
}

TEST_CASE("uncertified symbols cannot be inverted and tiny support caps refuse") {
    auto z1 = GroupSpec::free_abelian(1);
    CHECK_THROWS_AS(neumann_inverse(elem(z1, {{"e", 1}, {"(1)", -1}}), mpq_class(1, 10)), Error);
    auto f2 = GroupSpec::free_group(2);
    RingElement f = elem(f2, {{"e", 5}, {"a", -1}, {"b", -1}, {"a^-1", -1}, {"b^-1", -1}});
    CHECK_THROWS_AS(neumann_inverse(f, mpq_class(1, 1000000), 1000), Error);
}

TEST_CASE("fhat is the adjoint of the inverse with the same tail") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"e", 3}, {"(1)", -1}});
    TruncatedInverse inv = neumann_inverse(f, mpq_class(1, 100));
    TruncatedInverse fh = fhat(f, mpq_class(1, 100));
    CHECK(fh.approx == adjoint(inv.approx));
    CHECK(fh.tail_bound == inv.tail_bound);
}

TEST_CASE("greedy window selection pulls the heaviest inverse coefficients") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"e", 3}, {"(1)", -1}});
    TruncatedInverse fh = fhat(f, mpq_class(1, 1000000));
    // Coefficients of fhat are 3^-(k+1) at a^-k; with M = 4, delta = 1/10 the
    // off-window mass must drop below 1/40, which takes the top three.
    std::vector<GroupElement> w = select_window(fh, 4, mpq_class(1, 10));
    REQUIRE(w.size() == 3);
    CHECK(w[0] == parse_word(z1, "e"));
    CHECK(w[1] == parse_word(z1, "(-1)"));
    CHECK(w[2] == parse_word(z1, "(-2)"));
}

TEST_CASE("window selection refuses when the tail alone is too heavy") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f = elem(z1, {{"e", 3}, {"(1)", -1}});
    TruncatedInverse fh = fhat(f, mpq_class(1, 100));
    // M * tail >= delta: no window can satisfy the requirement.
    CHECK_THROWS_AS(select_window(fh, 4, mpq_class(1, 100000)), Error);
}
