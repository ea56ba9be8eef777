#pragma once

#include <optional>
#include <string>
#include <vector>

namespace logmoduli {

struct CurveFamily {
    std::string name;
    std::vector<int> stratum;       // I, 0-based sorted
    long long c1_tx = 0;            // c1(TX) on the generator A
    std::vector<long long> dot;     // A . D_i
    bool effective = true;          // omega(A) > 0
    bool all_multiples = true;      // multiplicity range "all m >= 1"
    std::vector<long long> multiples;  // used when all_multiples is false
    std::optional<long long> delta;    // minimum geometric intersection count, default 0
};

struct GeometryProfile {
    int n = 0;
    int N = 0;
    std::vector<CurveFamily> families;
};

long long family_c1_log(const CurveFamily& f, long long m);
long long family_ell(const CurveFamily& f, long long m, int N);

struct PositivityWitness {
    std::string condition;  // "SP1", "PExtra", "SP2", "Nef"
    std::string family;
    std::vector<int> stratum;
    long long multiple = 1;
    long long c1_log = 0;
    long long ell = 0;
    long long delta = 0;
    std::string detail;
};

struct PositivityVerdict {
    bool nef = true;
    bool semi_positive = true;
    bool positive = true;
    bool strongly_semi_positive = true;
    bool strongly_positive = true;
    // Verdicts when the (I, delta) = (empty, 0) case is not exempted from the stronger bound.
    bool strongly_semi_positive_strict = true;
    bool strongly_positive_strict = true;
    bool exemption_matters = false;
    std::vector<PositivityWitness> witnesses;
    std::vector<std::string> defaults_applied;
    bool enumeration_agrees = true;
};

// Classifies the pair. Rank-1 families are decided by exact interval arithmetic in m and
// cross-checked by enumeration over m in [1, 2n+5].
PositivityVerdict classify_pair(const GeometryProfile& profile, bool exempt_empty_zero = true);

// Profile of P^n with d transverse hyperplanes: line classes in every D_I with |I| <= n-1.
// Families are listed once per |I| because the pairings depend only on |I|.
GeometryProfile hyperplane_profile(int n, int d);

}  // namespace logmoduli
