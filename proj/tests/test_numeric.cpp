#include "support.hpp"

#include <doctest.h>

using namespace testsupport;

TEST_CASE("rationals parse in integer, fraction and negative forms") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("7/1") == Rational(7));
    CHECK_THROWS_AS(parse_rational(" 7"), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK(to_string(Rational(-4, 6)) == "-2/3");
}

TEST_CASE("gcd, lcm and floor division follow the usual sign conventions") {
    CHECK(gcd(BigInt(12), BigInt(-18)) == 6);
    CHECK(gcd(BigInt(0), BigInt(5)) == 5);
    CHECK(lcm(BigInt(4), BigInt(6)) == 12);
    CHECK(floor_div(BigInt(-7), BigInt(2)) == -4);
    CHECK(floor_div(BigInt(7), BigInt(-2)) == -4);
    CHECK(floor_div(BigInt(6), BigInt(3)) == 2);
}

TEST_CASE("primitive vectors clear denominators and common factors") {
    const std::vector<Rational> v = {Rational(1, 2), Rational(-3, 4), 0};
    CHECK(primitive_vector(v) == std::vector<BigInt>{2, -3, 0});
    CHECK(primitive_vector(std::vector<BigInt>{6, -9}) == std::vector<BigInt>{2, -3});
}

TEST_CASE("natural ordering compares digit runs numerically") {
    CHECK(natural_less("e2", "e10"));
    CHECK_FALSE(natural_less("e10", "e2"));
    CHECK(natural_less("v1", "w0"));
    CHECK_FALSE(natural_less("e3", "e3"));
}

TEST_CASE("Gaussian rationals round-trip through text") {
    for (const char* text : {"0", "1", "-1+i", "2/3-5/7*i", "i", "-i", "1/2*i"}) {
        const GaussianRational z = parse_gaussian(text);
        CHECK(parse_gaussian(to_string(z)) == z);
    }
    CHECK(parse_gaussian("-1+i") == GaussianRational(-1, 1));
    CHECK(parse_gaussian("1/2+3*i") == GaussianRational(Rational(1, 2), 3));
    CHECK_THROWS_AS(parse_gaussian("1+j"), InputError);
}

TEST_CASE("field operations in Q(i)") {
    Rng rng(11);
    for (int s = 0; s < 100; ++s) {
        const GaussianRational a = rng.gaussian(), b = rng.gaussian();
        CHECK(a * b / b == a);
        CHECK(a * a.inverse() == GaussianRational(1));
        CHECK((a + b) - b == a);
        CHECK(a.pow(3) == a * a * a);
        CHECK(a.pow(-2) * a * a == GaussianRational(1));
        CHECK(a.norm() == (a * a.conj()).re());
    }
    CHECK(GaussianRational(0, 1).pow(2) == GaussianRational(-1));
}

TEST_CASE("square roots exist exactly for squares") {
    Rng rng(12);
    for (int s = 0; s < 100; ++s) {
        const GaussianRational r = rng.gaussian();
        GaussianRational root;
        REQUIRE(gaussian_sqrt(r * r, root));
        CHECK(root * root == r * r);
        CHECK((root == r || root == -r));
    }
    GaussianRational root;
    CHECK_FALSE(gaussian_sqrt(GaussianRational(2), root));
    CHECK(gaussian_sqrt(GaussianRational(0, 2), root));  // (1+i)^2 = 2i
    CHECK(root * root == GaussianRational(0, 2));
}

TEST_CASE("points of P^1 parse infinity") {
    CHECK(parse_p1("inf").infinite);
    CHECK(parse_p1("3/4").z == GaussianRational(Rational(3, 4)));
    CHECK(to_string(P1Point::at_infinity()) == "inf");
    CHECK(P1Point::finite(1) < P1Point::at_infinity());
}
