#pragma once

#include "cocompact/matrix.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cocompact {

// A preserves the integral antisymmetric form J: A^T J A = J.
struct SympPair {
    IntMatrix A;
    IntMatrix J;
    std::size_t n() const { return A.rows(); }
};

// Blocks [[0, 1], [-1, 0]] down the diagonal; n even.
IntMatrix standard_symplectic(std::size_t n);

// Primitive nondegenerate antisymmetric J with A^T J A = J, first nonzero
// upper entry positive. Throws NoForm when none exists.
IntMatrix invariant_form(const IntMatrix& A, std::uint64_t seed = 1);
// Rational input must be integral (PreconditionViolated otherwise).
IntMatrix invariant_form(const RatMatrix& A, std::uint64_t seed = 1);

// diag(I_{2(q - qbar)}, companion(f)) with J_std + invariant_form(companion(f)).
SympPair build_A_for_theorem1(const IntPoly& f, int q);

// Leading identity block of A (and J) split off: A = diag(I_m, core).
struct BlockSplit {
    std::size_t identity = 0;
    IntMatrix core, core_form;
};
BlockSplit split_identity_block(const SympPair& sp);

struct LKOReport {
    struct Check {
        std::string name;
        bool ok = false;
        std::string detail;
    };
    std::vector<Check> checks;
    bool ok() const;
    const Check* find(const std::string& name) const;
};

// lattice_preserved, form_integral, form_nondegenerate, form_primitive,
// preserves_form, semisimple, charpoly_integral and, if given, charpoly_expected.
LKOReport verify_LKO(const SympPair& sp, const std::optional<IntPoly>& expected_charpoly = std::nullopt);

// Element (z, v, n) of Gamma(A) = H(Z) x| Z.
struct GammaElem {
    Rational z = 0;
    std::vector<Integer> v;
    Integer n = 0;
    friend bool operator==(const GammaElem&, const GammaElem&) = default;
};

std::string to_string(const GammaElem& g);

// (z, v, n)(z', v', n') = (z + z' + 1/2 v^T J A^n v', v + A^n v', n + n').
class GammaA {
public:
    explicit GammaA(SympPair base);

    const SympPair& base() const { return base_; }
    std::size_t dim() const { return base_.n(); }

    GammaElem identity() const;
    GammaElem mul(const GammaElem& a, const GammaElem& b) const;
    GammaElem inverse(const GammaElem& a) const;
    // omega(x, y) = x^T J y
    Integer omega(const std::vector<Integer>& x, const std::vector<Integer>& y) const;

    // (0, e_i, 0), (0, 0, 1) and the centre (1, 0, 0).
    GammaElem basis_vector(std::size_t i) const;
    GammaElem shift() const;
    GammaElem centre() const;

    const IntMatrix& power(long n) const;

private:
    SympPair base_;
    mutable std::map<long, IntMatrix> powers_;
};

struct Commensurability {
    enum Kind { Proven, Disproven, Unknown } kind = Unknown;
    RatMatrix S;
    Rational m = 0;
    int n1 = 0, n2 = 0;
    std::vector<std::string> invariants; // failing invariants when Disproven
    std::string detail;
};

const char* to_string(Commensurability::Kind k);

inline constexpr int kDefaultPowerBound = 6;
inline constexpr int kDefaultSearchBound = 8;

// Gamma(A1) vs Gamma(A2) for A_i = diag(I, A_i°): proof by a similitude S with
// S (A1°)^n1 = (A2°)^n2 S and S^T J2 S = m J1, disproof by invariants.
Commensurability commensurable(const SympPair& a1, const SympPair& a2, int power_bound = kDefaultPowerBound,
                               int search_bound = kDefaultSearchBound);

} // namespace cocompact
