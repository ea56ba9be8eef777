#pragma once

#include "logmoduli/numeric.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace logmoduli {

// Exact element a + b*i of Q(i).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long long re) : re_(re) {}
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    GaussianRational inverse() const;
    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational pow(long long e) const;

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    // Lexicographic on (re, im); used only for deterministic ordering.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
inline GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
inline GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
inline GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

// Canonical text form: "a", "a/b", "c/d*i", "a/b+c/d*i", "a/b-c/d*i".
std::string to_string(const GaussianRational& z);
GaussianRational parse_gaussian(std::string_view text, const std::string& field = {});

// Exact square root in Q(i) when one exists; the returned root has positive real part,
// or zero real part and non-negative imaginary part.
bool gaussian_sqrt(const GaussianRational& z, GaussianRational& root);

// A point of the projective line: a finite coordinate or the point at infinity.
struct P1Point {
    bool infinite = false;
    GaussianRational z;

    static P1Point at_infinity() { return {true, {}}; }
    static P1Point finite(GaussianRational v) { return {false, std::move(v)}; }

    friend bool operator==(const P1Point& a, const P1Point& b) {
        return a.infinite == b.infinite && (a.infinite || a.z == b.z);
    }
    friend bool operator<(const P1Point& a, const P1Point& b) {
        if (a.infinite != b.infinite) return !a.infinite;
        return !a.infinite && a.z < b.z;
    }
};

std::string to_string(const P1Point& p);
P1Point parse_p1(std::string_view text, const std::string& field = {});

}  // namespace logmoduli
