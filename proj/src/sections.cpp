#include "logmoduli/sections.hpp"

#include "logmoduli/errors.hpp"

#include <algorithm>

namespace logmoduli {

RationalSection::RationalSection(long long degree, GaussianRational scale,
                                 std::vector<std::pair<GaussianRational, long long>> factors)
    : degree_(degree), scale_(std::move(scale)), factors_(std::move(factors)) {
    if (scale_.is_zero()) throw InputError("section scale must be nonzero");
    factors_.erase(std::remove_if(factors_.begin(), factors_.end(), [](const auto& f) { return f.second == 0; }),
                   factors_.end());
    std::sort(factors_.begin(), factors_.end());
    for (std::size_t k = 1; k < factors_.size(); ++k)
        if (factors_[k].first == factors_[k - 1].first) throw PreconditionError("section divisor points must be distinct");
}

long long RationalSection::order_at_infinity() const {
    long long s = 0;
    for (const auto& f : factors_) s += f.second;
    return degree_ - s;
}

GaussianRational RationalSection::evaluate(const GaussianRational& z) const {
    GaussianRational v = scale_;
    for (const auto& [p, m] : factors_) {
        const GaussianRational d = z - p;
        if (d.is_zero()) throw PreconditionError("evaluation at a zero or pole of the section");
        v *= d.pow(m);
    }
    return v;
}

RationalSection RationalSection::scaled(const GaussianRational& c) const {
    return RationalSection(degree_, scale_ * c, factors_);
}

RationalSection build_section(long long degree, const std::vector<std::pair<P1Point, long long>>& divisor,
                              const GaussianRational& scale) {
    long long total = 0;
    long long at_infinity = 0;
    std::vector<std::pair<GaussianRational, long long>> finite;
    std::vector<P1Point> seen;
    for (const auto& [p, m] : divisor) {
        if (std::find(seen.begin(), seen.end(), p) != seen.end())
            throw PreconditionError("section divisor points must be distinct");
        seen.push_back(p);
        total += m;
        if (p.infinite)
            at_infinity = m;
        else
            finite.push_back({p.z, m});
    }
    if (total != degree)
        throw InputError("no such section: divisor has total order " + std::to_string(total) + " but degree is " +
                         std::to_string(degree));
    RationalSection s(degree, scale, std::move(finite));
    if (s.order_at_infinity() != at_infinity) throw InternalError("order at infinity bookkeeping");
    return s;
}

RationalSection build_section_affine(long long degree, const std::vector<std::pair<GaussianRational, long long>>& divisor,
                                     const GaussianRational& scale) {
    return RationalSection(degree, scale, divisor);
}

LeadingTerm leading_coefficient(const RationalSection& s, const P1Point& p) {
    if (p.infinite) return {s.order_at_infinity(), s.scale()};
    LeadingTerm t{0, s.scale()};
    for (const auto& [q, m] : s.factors()) {
        if (q == p.z)
            t.order = m;
        else
            t.eta *= (p.z - q).pow(m);
    }
    return t;
}

}  // namespace logmoduli
