#include "support.hpp"

#include <doctest.h>

using namespace testsupport;

namespace {

CurveFamily family(std::string name, std::vector<int> stratum, long long c1_tx, std::vector<long long> dot,
                   std::optional<long long> delta = 0) {
    CurveFamily f;
    f.name = std::move(name);
    f.stratum = std::move(stratum);
    f.c1_tx = c1_tx;
    f.dot = std::move(dot);
    f.delta = delta;
    return f;
}

}  // namespace

TEST_CASE("the line in D_12 of P^4 breaks only the strong condition") {
    const PositivityVerdict v = classify_pair(*load_fixture("mc_issue.json").profile);
    CHECK(v.nef);
    CHECK(v.semi_positive);
    CHECK(v.positive);
    CHECK_FALSE(v.strongly_semi_positive);
    CHECK_FALSE(v.strongly_positive);
    REQUIRE(v.witnesses.size() == 1);
    CHECK(v.witnesses[0].condition == "SP2");
    CHECK(v.witnesses[0].family == "line in D_12");
    CHECK(v.witnesses[0].multiple == 1);
    CHECK(v.witnesses[0].c1_log == 1);
    CHECK(v.witnesses[0].ell == 0);
    CHECK(v.defaults_applied.empty());
}

TEST_CASE("family invariants") {
    const CurveFamily f = family("f", {0}, 4, {1, 2, 3});
    CHECK(family_c1_log(f, 1) == -2);
    CHECK(family_c1_log(f, 3) == -6);
    CHECK(family_ell(f, 1, 3) == 2);  // capped at 2
    const CurveFamily g = family("g", {0, 1}, 4, {1, 1, 1});
    CHECK(family_ell(g, 1, 3) == 1);
    CHECK(family_ell(g, 5, 3) == 2);
}

TEST_CASE("missing delta is reported as a default") {
    GeometryProfile p;
    p.n = 2;
    p.N = 1;
    p.families.push_back(family("conic", {}, 6, {2}, std::nullopt));
    const PositivityVerdict v = classify_pair(p);
    REQUIRE(v.defaults_applied.size() == 1);
    CHECK(v.defaults_applied[0].find("conic") != std::string::npos);
}

TEST_CASE("a negative intersection makes the pair non-nef") {
    GeometryProfile p;
    p.n = 2;
    p.N = 1;
    p.families.push_back(family("exceptional", {}, 1, {-1}));
    const PositivityVerdict v = classify_pair(p);
    CHECK_FALSE(v.nef);
    CHECK_FALSE(v.semi_positive);
    CHECK_FALSE(v.positive);
    CHECK(std::any_of(v.witnesses.begin(), v.witnesses.end(), [](const PositivityWitness& w) { return w.condition == "Nef"; }));
}

TEST_CASE("the exemption for empty strata only matters at delta 0") {
    GeometryProfile p;
    p.n = 3;
    p.N = 1;
    // c1_log = 0 with ell = 2 meets the SP2 hypothesis 3 - 3 + 0 - 2 = -2.
    p.families.push_back(family("curve", {}, 2, {2}));
    const PositivityVerdict v = classify_pair(p);
    CHECK(v.strongly_semi_positive);
    CHECK_FALSE(v.strongly_semi_positive_strict);
    CHECK(v.exemption_matters);
    p.families[0].delta = 2;
    const PositivityVerdict w = classify_pair(p);
    CHECK_FALSE(w.exemption_matters);
}

TEST_CASE("finite multiplicity lists are checked one by one") {
    GeometryProfile p;
    p.n = 2;
    p.N = 1;
    CurveFamily f = family("line", {}, 3, {4});  // c1_log = -m
    f.all_multiples = false;
    f.multiples = {3};
    p.families.push_back(f);
    const PositivityVerdict v = classify_pair(p);
    CHECK(v.semi_positive);  // -3 < 3 - 2 - 2 = -1, so the hypothesis fails
    p.families[0].multiples = {1};
    CHECK_FALSE(classify_pair(p).semi_positive);
}

TEST_CASE("hyperplane arrangements away from the window boundary") {
    for (int n = 1; n <= 6; ++n)
        for (int d = 1; d <= 20; ++d) {
            if (d == 2 * n + 1) continue;
            CAPTURE(n);
            CAPTURE(d);
            const PositivityVerdict v = classify_pair(hyperplane_profile(n, d));
            CHECK(v.enumeration_agrees);
            CHECK(v.semi_positive == !(d >= n + 2 && d <= 2 * n + 1));
            CHECK(v.positive == !(d >= n + 1 && d <= 2 * n + 1));
        }
}

TEST_CASE("hyperplane arrangement at d = 2n+1 is positive") {
    for (int n = 1; n <= 6; ++n) {
        const PositivityVerdict v = classify_pair(hyperplane_profile(n, 2 * n + 1));
        CHECK(v.semi_positive);
        CHECK(v.positive);
    }
}

TEST_CASE("malformed profiles are input errors") {
    GeometryProfile p;
    p.n = 2;
    p.N = 2;
    p.families.push_back(family("bad", {0}, 3, {1}));
    CHECK_THROWS_AS(classify_pair(p), InputError);
    p.families[0].dot = {1, 1};
    p.families[0].stratum = {2};
    CHECK_THROWS_AS(classify_pair(p), InputError);
    p.n = 0;
    CHECK_THROWS_AS(classify_pair(p), InputError);
}
