#include "logmoduli/numeric.hpp"

#include "logmoduli/errors.hpp"

#include <cctype>

namespace logmoduli {

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text, const std::string& field) {
    auto fail = [&]() -> Rational {
        throw InputError("cannot parse rational number '" + std::string(text) + "'", field);
    };
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    std::string_view num_part = s.substr(0, slash);
    std::string_view den_part = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!all_digits(num_part) || !all_digits(den_part)) return fail();
    BigInt num{std::string(num_part)};
    BigInt den{std::string(den_part)};
    if (den == 0) return fail();
    if (negative) num = -num;
    return Rational(num, den);
}

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt x = abs(a), y = abs(b);
    while (y != 0) {
        BigInt r = x % y;
        x = y;
        y = r;
    }
    return x;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    BigInt r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

std::vector<BigInt> primitive_vector(const std::vector<Rational>& v) {
    BigInt den = 1;
    for (const auto& q : v) den = lcm(den, boost::multiprecision::denominator(q));
    std::vector<BigInt> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(boost::multiprecision::numerator(q) * (den / boost::multiprecision::denominator(q)));
    return primitive_vector(out);
}

std::vector<BigInt> primitive_vector(const std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& x : v) g = gcd(g, x);
    std::vector<BigInt> out = v;
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

bool natural_less(std::string_view a, std::string_view b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            std::string_view ra = a.substr(i, ie - i), rb = b.substr(j, je - j);
            while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
            while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
            if (ra.size() != rb.size()) return ra.size() < rb.size();
            if (ra != rb) return ra < rb;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
    return a < b;
}

}  // namespace logmoduli
