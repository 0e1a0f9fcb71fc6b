#pragma once

#include "cocompact/numeric.hpp"
#include "cocompact/poly.hpp"
#include "cocompact/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cocompact {

struct UnitPair {
    Interval s;          // angle in (0, pi)
    CertifiedRoot plus;  // e^{is}
    CertifiedRoot minus; // e^{-is}
};

struct SalemData {
    IntPoly poly;
    int k = 0; // degree 2k
    CertifiedRoot r;
    CertifiedRoot r_inv;
    // Ordered by increasing angle.
    std::vector<UnitPair> unit_pairs;
    int degree() const { return 2 * k; }
};

enum class Rejection {
    NotMonic,
    DegreeOdd,
    DegreeTooSmall,
    DegreeBoundExceeded,
    F2RuleViolated,
    Reducible,
    NotSelfReciprocal,
    WrongCircleCount,
    NegativeRealRoots,
};

const char* to_string(Rejection r);

struct Classification {
    bool member = false;
    int k = 0;
    std::optional<SalemData> data;
    std::optional<Rejection> reason;
    std::string detail;
};

inline const Rational kDefaultSalemTol = pow2(-64);

Classification classify_F_plus(const IntPoly& p, const Rational& tol = kDefaultSalemTol);

// Salem data of a polynomial already known to lie in F+, at tolerance tol.
// Skips the membership checks; use classify_F_plus for untrusted input.
SalemData salem_data(const IntPoly& p, const Rational& tol);

// Certified enclosures for refinement at arbitrary precision.
Interval salem_r(const IntPoly& p, const Rational& tol);
// Angle s_j (0-based, increasing) of a polynomial in F+ with k >= 2.
Interval salem_angle(const IntPoly& p, int j, const Rational& tol);

struct F4Params {
    long a = 0;
    long b = 0;
    friend bool operator==(const F4Params&, const F4Params&) = default;
};

IntPoly f4_poly(const F4Params& p); // x^4 - a x^3 + b x^2 - a x + 1
bool f4_inequalities(const F4Params& p);

// All (a, b) in the box meeting the inequalities, sorted by (a, b). Each is
// re-validated by classify_F_plus; disagreement throws InternalInconsistency.
std::vector<F4Params> enumerate_F4(long a_min, long a_max, long b_min, long b_max);

struct Salem4 {
    Interval t1, t2, r, s;
};

// Closed forms t1,2 = a/2 +- sqrt(a^2/4 - b + 2), r = (t1 + sqrt(t1^2 - 4))/2,
// s = acos(t2/2), every width <= tol. Cross-checked against root isolation.
Salem4 salem4_closed_form(const F4Params& p, const Rational& tol);

struct Equivalence {
    enum Kind { Equivalent, NotEquivalent, Unknown } kind = Unknown;
    int k1 = 0, k2 = 0;
    std::string reason;
};

const char* to_string(Equivalence::Kind k);

// Minimal polynomial of r^k: the non-cyclotomic part of charpoly(companion(p)^k).
IntPoly power_minpoly(const IntPoly& p, int k);

inline constexpr int kDefaultEquivalenceBound = 12;

// Searches r1^k1 = r2^k2 with 1 <= k1, k2 <= k_bound by increasing k1 + k2.
Equivalence salem_equivalent(const IntPoly& p1, const IntPoly& p2, int k_bound = kDefaultEquivalenceBound);

} // namespace cocompact
