#pragma once

#include "cocompact/poly.hpp"
#include "cocompact/symbolic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cocompact {

// mu = (mu_1, ..., mu_q), every entry nonzero.
struct MuSpecT1 {
    BasisPtr basis = std::make_shared<SymbolBasis>();
    std::vector<SymbolicReal> mu;
    int q() const { return static_cast<int>(mu.size()); }
};

enum class Family { Osc1, Osc2, D };
const char* to_string(Family f);

// Coordinates of mu_j in the basis sigma_1, sigma_2 of (R^2)*.
struct MuPair {
    SymbolicReal x, y;
    friend bool operator==(const MuPair&, const MuPair&) = default;
};

struct MuSpecT2 {
    BasisPtr basis = std::make_shared<SymbolBasis>();
    std::vector<MuPair> mu;
    Family family = Family::D;
    int q() const { return static_cast<int>(mu.size()); }
};

MuSpecT1 normalize_mu_T1(const MuSpecT1& mu);

// The first k-1 entries are (signs_j s_j + 2 pi ks_j) / ln r, the rest
// 2 pi ks_j / ln r. Throws ZeroEntry for a vanishing trivial entry.
MuSpecT1 synthesize_mu_T1(const IntPoly& f, int q, const std::vector<int>& signs, const std::vector<long>& ks);

struct MuAssignment {
    int slot = -1; // angle index, or -1 for an entry mapped to the eigenvalue 1
    int sign = 1;
    Integer k = 0;
    friend bool operator==(const MuAssignment&, const MuAssignment&) = default;
};

struct MuCheck {
    enum Kind { Member, NonMember, Unknown } kind = Unknown;
    std::vector<MuAssignment> witness; // one per entry, for Member
    bool exact = false;
    int bits = 0;
    std::vector<std::string> assumptions;
    std::string detail;
};

const char* to_string(MuCheck::Kind k);

inline constexpr int kDefaultOffsetBound = 64;

// Does mu lie in M_{f,q}? Requires f in F+.
MuCheck check_mu_T1(const MuSpecT1& mu, const IntPoly& f, int k_search_bound = kDefaultOffsetBound);

struct T1Decision {
    enum Kind { LatticeExists, NoWitnessFound } kind = NoWitnessFound;
    std::optional<IntPoly> f;
    MuCheck check;
    long candidates = 0; // polynomials enumerated
    long members = 0;    // of which in F+
    long unknown = 0;    // membership checks ending in Unknown
    std::vector<std::string> assumptions;
    std::string detail;
};

const char* to_string(T1Decision::Kind k);

// Bounded search over self-reciprocal f in F+ by (degree, height, lex).
T1Decision decide_T1(const MuSpecT1& mu, int coeff_height, int degree_bound);

struct T2Decision {
    enum Kind { LatticeExists, No, Unknown } kind = Unknown;
    std::vector<MuPair> basis;             // sigma'_1, sigma'_2 when LatticeExists
    std::vector<std::vector<Integer>> coords; // mu_j in that basis
    int rank_q = 0;
    std::vector<std::string> assumptions;
    std::string detail;
};

const char* to_string(T2Decision::Kind k);

// Throws IndecomposabilityViolated when check_indecomposable reports a violation.
T2Decision decide_T2(const MuSpecT2& mu);

struct Indecomposability {
    enum Kind { OK, Violation, Undetermined } kind = OK;
    std::string reason;
};

const char* to_string(Indecomposability::Kind k);

Indecomposability check_indecomposable(const MuSpecT1& mu);
Indecomposability check_indecomposable(const MuSpecT2& mu);

// Sign per entry (first nonzero coordinate positive) and lexicographic order.
// With scaling (default for the D family) the largest coordinate magnitude is
// brought to 1; this needs all coordinates to be rational multiples of it.
MuSpecT2 mu_orbit_normalize_T2(const MuSpecT2& mu);
MuSpecT2 mu_orbit_normalize_T2(const MuSpecT2& mu, bool scaling);

// Components x_i y_j - x_j y_i (i < j) of mu(e1) ^ mu(e2).
std::vector<Interval> wedge_invariant(const MuSpecT2& mu, int bits = 64);

} // namespace cocompact
