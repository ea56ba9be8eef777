#include "logmoduli/gaussian.hpp"

#include "logmoduli/errors.hpp"

#include <cctype>

namespace logmoduli {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(i)");
    const Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational GaussianRational::pow(long long e) const {
    GaussianRational base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
    GaussianRational acc(1);
    while (k > 0) {
        if (k & 1ULL) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::string to_string(const GaussianRational& z) {
    if (z.im() == 0) return to_string(z.re());
    const Rational mag = z.im() < 0 ? Rational(-z.im()) : z.im();
    std::string imag = to_string(mag) + "*i";
    if (z.re() == 0) return (z.im() < 0 ? "-" : "") + imag;
    return to_string(z.re()) + (z.im() < 0 ? "-" : "+") + imag;
}

GaussianRational parse_gaussian(std::string_view text, const std::string& field) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InputError("empty number", field);
    const bool has_imag = s.back() == 'i';
    if (!has_imag) return GaussianRational(parse_rational(s, field));
    s.pop_back();
    if (!s.empty() && s.back() == '*') s.pop_back();
    // Split at the last sign that is not the leading character.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    std::string real_part = split == std::string::npos ? std::string() : s.substr(0, split);
    std::string imag_part = split == std::string::npos ? s : s.substr(split);
    if (imag_part.empty() || imag_part == "+") imag_part = "1";
    if (imag_part == "-") imag_part = "-1";
    Rational re = real_part.empty() ? Rational(0) : parse_rational(real_part, field);
    Rational im = parse_rational(imag_part, field);
    return {re, im};
}

namespace {

bool rational_sqrt(const Rational& q, Rational& out) {
    if (q < 0) return false;
    const BigInt n = boost::multiprecision::numerator(q);
    const BigInt d = boost::multiprecision::denominator(q);
    const BigInt rn = boost::multiprecision::sqrt(n);
    const BigInt rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return false;
    out = Rational(rn, rd);
    return true;
}

}  // namespace

bool gaussian_sqrt(const GaussianRational& z, GaussianRational& root) {
    Rational modulus;
    if (!rational_sqrt(z.norm(), modulus)) return false;
    Rational x, y;
    if (!rational_sqrt((z.re() + modulus) / 2, x)) return false;
    if (x != 0) {
        y = z.im() / (2 * x);
    } else {
        if (!rational_sqrt((modulus - z.re()) / 2, y)) return false;
    }
    root = GaussianRational(x, y);
    if (root * root != z) return false;
    return true;
}

std::string to_string(const P1Point& p) { return p.infinite ? "inf" : to_string(p.z); }

P1Point parse_p1(std::string_view text, const std::string& field) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "inf") return P1Point::at_infinity();
    return P1Point::finite(parse_gaussian(s, field));
}

}  // namespace logmoduli
