#include "support.hpp"

#include "logmoduli/sections.hpp"

#include <doctest.h>

using namespace testsupport;

TEST_CASE("section with a pole and a zero") {
    // Degree 0 section with a zero at 1 and a pole at 2: c (z-1)/(z-2).
    const RationalSection s = build_section(0, {{P1Point::finite(1), 1}, {P1Point::finite(2), -1}}, GaussianRational(3));
    CHECK(s.order_at_infinity() == 0);
    CHECK(s.evaluate(0) == GaussianRational(Rational(3, 2)));
    CHECK_THROWS_AS(s.evaluate(2), PreconditionError);

    const LeadingTerm at1 = leading_coefficient(s, P1Point::finite(1));
    CHECK(at1.order == 1);
    CHECK(at1.eta == GaussianRational(-3));
    const LeadingTerm at2 = leading_coefficient(s, P1Point::finite(2));
    CHECK(at2.order == -1);
    CHECK(at2.eta == GaussianRational(3));
    const LeadingTerm away = leading_coefficient(s, P1Point::finite(0));
    CHECK(away.order == 0);
    CHECK(away.eta == s.evaluate(0));
}

TEST_CASE("the point at infinity absorbs the remaining degree") {
    const RationalSection s = build_section(2, {{P1Point::finite(0), 3}, {P1Point::at_infinity(), -1}}, GaussianRational(0, 1));
    CHECK(s.order_at_infinity() == -1);
    const LeadingTerm inf = leading_coefficient(s, P1Point::at_infinity());
    CHECK(inf.order == -1);
    CHECK(inf.eta == GaussianRational(0, 1));
}

TEST_CASE("divisor degree must match the line bundle") {
    CHECK_THROWS_AS(build_section(1, {{P1Point::finite(0), 2}}, GaussianRational(1)), InputError);
    CHECK_THROWS_AS(build_section(2, {{P1Point::finite(0), 1}, {P1Point::finite(0), 1}}, GaussianRational(1)), PreconditionError);
    CHECK_THROWS_AS(build_section(0, {}, GaussianRational(0)), InputError);
}

TEST_CASE("affine sections leave the order at infinity implicit") {
    const RationalSection s = build_section_affine(5, {{GaussianRational(1), 2}}, GaussianRational(1));
    CHECK(s.order_at_infinity() == 3);
}

TEST_CASE("leading coefficients scale linearly") {
    Rng rng(51);
    for (int t = 0; t < 50; ++t) {
        const GaussianRational a = rng.gaussian(), b = rng.gaussian_avoiding({a}), c = rng.gaussian();
        const RationalSection s = build_section(1, {{P1Point::finite(a), 2}, {P1Point::finite(b), -1}}, rng.gaussian());
        const LeadingTerm before = leading_coefficient(s, P1Point::finite(a));
        const LeadingTerm after = leading_coefficient(s.scaled(c), P1Point::finite(a));
        CHECK(after.order == before.order);
        CHECK(after.eta == before.eta * c);
        CHECK(before.eta == s.scale() / (a - b));
    }
}

TEST_CASE("vertex sections of the ghost have the divisor of its special points") {
    const GraphDocument doc = load_fixture("two_line_ghost.json");
    const auto sections = vertex_sections(doc.graph, "v0", *doc.sections);
    REQUIRE(sections.size() == 2);
    // Coordinate 1: legs z1 (contact 2) at 0 and z2 (contact 1) at inf; edges (contact -1) at 1, 2, -1+i.
    const RationalSection& s1 = sections.at(0);
    CHECK(s1.order_at_infinity() == 1);
    CHECK(leading_coefficient(s1, P1Point::finite(0)).order == 2);
    CHECK(leading_coefficient(s1, P1Point::finite(1)).order == -1);
    CHECK(leading_coefficient(s1, P1Point::finite(GaussianRational(-1, 1))).order == -1);
    CHECK(s1.scale() == GaussianRational(2));
    CHECK(sections.at(1).scale() == GaussianRational(3));
}
