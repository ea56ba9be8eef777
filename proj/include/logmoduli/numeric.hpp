#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace logmoduli {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const BigInt& v);
std::string to_string(const Rational& q);

// Accepts "p", "+p", "-p", "p/q" with q != 0. Throws InputError naming `field`.
Rational parse_rational(std::string_view text, const std::string& field = {});

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

// Floor division for signed big integers (b != 0).
BigInt floor_div(const BigInt& a, const BigInt& b);

// Scales a rational vector to the primitive integer vector on the same ray.
std::vector<BigInt> primitive_vector(const std::vector<Rational>& v);
std::vector<BigInt> primitive_vector(const std::vector<BigInt>& v);

// Natural ordering of identifiers: digit runs compare numerically, so "e2" < "e10".
bool natural_less(std::string_view a, std::string_view b);

}  // namespace logmoduli
