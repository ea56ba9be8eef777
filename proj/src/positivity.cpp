#include "logmoduli/positivity.hpp"

#include "logmoduli/errors.hpp"
#include "logmoduli/numeric.hpp"

#include <algorithm>
#include <limits>

namespace logmoduli {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

bool in_stratum(const std::vector<int>& s, int i) { return std::binary_search(s.begin(), s.end(), i); }

long long c1_log_generator(const CurveFamily& f) {
    long long s = f.c1_tx;
    for (long long x : f.dot) s -= x;
    return s;
}

long long off_stratum_degree(const CurveFamily& f, int N) {
    long long s = 0;
    for (int j = 0; j < N; ++j)
        if (!in_stratum(f.stratum, j)) s += f.dot[static_cast<std::size_t>(j)];
    return s;
}

long long floor_div_ll(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long ceil_div_ll(long long a, long long b) { return -floor_div_ll(-a, b); }

// Integer interval [lo, hi] (hi may be kInf), empty when lo > hi.
struct Interval {
    long long lo;
    long long hi;
    bool empty() const { return lo > hi; }
};

// Restricts to {m : a*m >= b}.
Interval restrict_ge(Interval iv, long long a, long long b) {
    if (a > 0) iv.lo = std::max(iv.lo, ceil_div_ll(b, a));
    else if (a < 0) iv.hi = std::min(iv.hi, floor_div_ll(b, a));
    else if (0 < b) iv.hi = iv.lo - 1;
    return iv;
}

enum class Condition { SP1, PExtra, SP2 };

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::SP1: return "SP1";
        case Condition::PExtra: return "PExtra";
        case Condition::SP2: return "SP2";
    }
    return "";
}

long long sp2_threshold(const CurveFamily& f, bool exempt_empty_zero) {
    const long long delta = f.delta.value_or(0);
    if (exempt_empty_zero && f.stratum.empty() && delta == 0) return 0;
    return std::max<long long>(0, 2 - delta);
}

// Smallest c1_log value that satisfies the conclusion of the condition.
long long conclusion_threshold(Condition c, const CurveFamily& f, bool exempt) {
    switch (c) {
        case Condition::SP1: return 0;
        case Condition::PExtra: return 1;
        case Condition::SP2: return sp2_threshold(f, exempt);
    }
    return 0;
}

bool violates(Condition cond, const CurveFamily& f, long long m, int n, int N, bool exempt) {
    const long long c1 = family_c1_log(f, m);
    const long long ell = family_ell(f, m, N);
    const long long hyp = 3 - n + static_cast<long long>(f.stratum.size()) - ell;
    return c1 >= hyp && c1 < conclusion_threshold(cond, f, exempt);
}

// Smallest violating multiple of a rank-1 family, by interval arithmetic in m.
std::optional<long long> symbolic_violation(Condition cond, const CurveFamily& f, int n, int N, bool exempt) {
    const long long c = c1_log_generator(f);
    const long long s = off_stratum_degree(f, N);
    const long long K = 3 - n + static_cast<long long>(f.stratum.size());
    const long long t = conclusion_threshold(cond, f, exempt);
    std::vector<std::pair<Interval, bool>> pieces;  // interval, ell linear (true) or capped at 2
    if (s <= 0) {
        pieces.push_back({{1, kInf}, true});
    } else {
        const long long m0 = ceil_div_ll(2, s);
        if (m0 > 1) pieces.push_back({{1, m0 - 1}, true});
        pieces.push_back({{std::max<long long>(1, m0), kInf}, false});
    }
    std::optional<long long> best;
    for (auto [iv, linear] : pieces) {
        iv = linear ? restrict_ge(iv, c + s, K) : restrict_ge(iv, c, K - 2);
        iv = restrict_ge(iv, -c, 1 - t);  // c*m <= t-1
        if (!iv.empty() && (!best || iv.lo < *best)) best = iv.lo;
    }
    return best;
}

}  // namespace

long long family_c1_log(const CurveFamily& f, long long m) { return m * c1_log_generator(f); }

long long family_ell(const CurveFamily& f, long long m, int N) { return std::min<long long>(m * off_stratum_degree(f, N), 2); }

PositivityVerdict classify_pair(const GeometryProfile& p, bool exempt_empty_zero) {
    if (p.n < 1) throw InputError("profile dimension n must be positive", "profile.n");
    PositivityVerdict v;
    for (std::size_t fi = 0; fi < p.families.size(); ++fi) {
        const CurveFamily& f = p.families[fi];
        const std::string where = "profile.families[" + std::to_string(fi) + "]";
        if (static_cast<int>(f.dot.size()) != p.N) throw InputError("dot has wrong length", where + ".dot");
        for (std::size_t k = 0; k < f.stratum.size(); ++k)
            if (f.stratum[k] < 0 || f.stratum[k] >= p.N || (k && f.stratum[k] <= f.stratum[k - 1]))
                throw InputError("invalid stratum", where + ".stratum");
        if (!f.all_multiples && f.multiples.empty()) throw InputError("finite multiplicity list is empty", where + ".multiples");
        for (long long m : f.multiples)
            if (m < 1) throw InputError("multiplicities must be positive", where + ".multiples");
        if (!f.delta) v.defaults_applied.push_back(f.name + ": delta defaults to 0");
        if (!f.effective) continue;
        for (int i = 0; i < p.N; ++i)
            if (f.dot[static_cast<std::size_t>(i)] < 0) {
                v.nef = false;
                v.witnesses.push_back({"Nef", f.name, f.stratum, 1, family_c1_log(f, 1), family_ell(f, 1, p.N), f.delta.value_or(0),
                                       "A.D_" + std::to_string(i + 1) + " < 0"});
            }
        auto check = [&](Condition cond, bool exempt) -> std::optional<long long> {
            std::optional<long long> found;
            if (f.all_multiples) {
                found = symbolic_violation(cond, f, p.n, p.N, exempt);
                const long long limit = 2LL * p.n + 5;
                std::optional<long long> enumerated;
                for (long long m = 1; m <= limit && !enumerated; ++m)
                    if (violates(cond, f, m, p.n, p.N, exempt)) enumerated = m;
                const bool sym_in_range = found && *found <= limit;
                if (sym_in_range != enumerated.has_value() || (sym_in_range && *found != *enumerated)) v.enumeration_agrees = false;
            } else {
                for (long long m : f.multiples)
                    if (violates(cond, f, m, p.n, p.N, exempt) && (!found || m < *found)) found = m;
            }
            if (found && !violates(cond, f, *found, p.n, p.N, exempt))
                throw InternalError("positivity witness does not violate the implication");
            return found;
        };
        auto record = [&](Condition cond, long long m) {
            const long long ell = family_ell(f, m, p.N);
            v.witnesses.push_back({condition_name(cond), f.name, f.stratum, m, family_c1_log(f, m), ell, f.delta.value_or(0),
                                   "c1_log = " + std::to_string(family_c1_log(f, m)) + " meets the hypothesis bound " +
                                       std::to_string(3 - p.n + static_cast<long long>(f.stratum.size()) - ell) +
                                       " but not the conclusion " + std::to_string(conclusion_threshold(cond, f, exempt_empty_zero))});
        };
        if (auto m = check(Condition::SP1, exempt_empty_zero)) {
            v.semi_positive = false;
            record(Condition::SP1, *m);
        }
        if (auto m = check(Condition::PExtra, exempt_empty_zero)) {
            v.positive = false;
            record(Condition::PExtra, *m);
        }
        if (auto m = check(Condition::SP2, exempt_empty_zero)) {
            v.strongly_semi_positive = false;
            record(Condition::SP2, *m);
        }
        if (check(Condition::SP2, false)) v.strongly_semi_positive_strict = false;
    }
    v.semi_positive = v.semi_positive && v.nef;
    v.positive = v.positive && v.nef;
    v.strongly_semi_positive = v.strongly_semi_positive && v.semi_positive;
    v.strongly_positive = v.strongly_semi_positive && v.positive;
    v.strongly_semi_positive_strict = v.strongly_semi_positive_strict && v.semi_positive;
    v.strongly_positive_strict = v.strongly_semi_positive_strict && v.positive;
    v.exemption_matters = v.strongly_semi_positive != v.strongly_semi_positive_strict;
    std::sort(v.defaults_applied.begin(), v.defaults_applied.end());
    v.defaults_applied.erase(std::unique(v.defaults_applied.begin(), v.defaults_applied.end()), v.defaults_applied.end());
    return v;
}

GeometryProfile hyperplane_profile(int n, int d) {
    if (n < 1 || d < 0) throw InputError("hyperplane profile needs n >= 1 and d >= 0");
    GeometryProfile p;
    p.n = n;
    p.N = d;
    for (int j = 0; j <= std::min(n - 1, d); ++j) {
        CurveFamily f;
        f.name = "line in D_I, |I| = " + std::to_string(j);
        for (int i = 0; i < j; ++i) f.stratum.push_back(i);
        f.c1_tx = n + 1;
        f.dot.assign(static_cast<std::size_t>(d), 1);
        f.effective = true;
        f.all_multiples = true;
        p.families.push_back(std::move(f));
    }
    return p;
}

}  // namespace logmoduli
