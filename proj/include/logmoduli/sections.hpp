#pragma once

#include "logmoduli/gaussian.hpp"

#include <utility>
#include <vector>

namespace logmoduli {

// A section of O(d) on P^1 written as scale * prod (z - p)^m over finite points p.
// The order at infinity is d minus the sum of the finite orders.
class RationalSection {
public:
    RationalSection(long long degree, GaussianRational scale, std::vector<std::pair<GaussianRational, long long>> factors);

    long long degree() const { return degree_; }
    const GaussianRational& scale() const { return scale_; }
    const std::vector<std::pair<GaussianRational, long long>>& factors() const { return factors_; }
    long long order_at_infinity() const;

    // Value of the finite-chart representative at a point that is neither a zero nor a pole.
    GaussianRational evaluate(const GaussianRational& z) const;
    RationalSection scaled(const GaussianRational& c) const;

private:
    long long degree_;
    GaussianRational scale_;
    std::vector<std::pair<GaussianRational, long long>> factors_;
};

// Strict form: the listed orders (including any order at infinity) must sum to the degree.
RationalSection build_section(long long degree, const std::vector<std::pair<P1Point, long long>>& divisor,
                              const GaussianRational& scale);

// Affine form: only finite points are prescribed; infinity absorbs the remaining order.
RationalSection build_section_affine(long long degree, const std::vector<std::pair<GaussianRational, long long>>& divisor,
                                     const GaussianRational& scale);

struct LeadingTerm {
    long long order = 0;
    GaussianRational eta;
};

// Order and leading coefficient in the local coordinate w = z - p (finite p) or w = 1/z at
// infinity, where the O(d) representative there is w^d * zeta(1/w).
LeadingTerm leading_coefficient(const RationalSection& s, const P1Point& p);

}  // namespace logmoduli
