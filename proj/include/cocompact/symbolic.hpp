#pragma once

#include "cocompact/numeric.hpp"
#include "cocompact/poly.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cocompact {

// Ties a symbol to the Salem data of f: s_j / ln r or 2 pi / ln r.
struct SalemTag {
    enum Kind { AngleOverLog, TwoPiOverLog } kind = TwoPiOverLog;
    IntPoly f;
    int j = 0;
};

struct Symbol {
    std::string name;
    // Enclosure of the value, roughly 2^-bits wide when the symbol is refinable.
    std::function<Interval(int bits)> value;
    // Assumed Q-linearly independent from the other independent symbols and 1.
    bool independent = true;
    std::optional<SalemTag> salem;
};

// Declared real constants. Symbol 0 is the rational unit 1.
class SymbolBasis {
public:
    SymbolBasis();

    int add(Symbol s);
    std::size_t size() const { return syms_.size(); }
    const Symbol& operator[](std::size_t i) const { return syms_.at(i); }
    std::optional<int> find(const std::string& name) const;
    // Cached per precision.
    Interval value(std::size_t i, int bits) const;

private:
    std::vector<Symbol> syms_;
    mutable std::vector<std::map<int, Interval>> cache_;
};

using BasisPtr = std::shared_ptr<SymbolBasis>;

// Finite Q-combination of basis symbols. Zero coefficients are never stored.
struct SymbolicReal {
    std::map<int, Rational> coeffs;

    SymbolicReal() = default;
    static SymbolicReal rational(const Rational& c);
    static SymbolicReal symbol(int id, const Rational& c = Rational(1));

    bool is_zero() const { return coeffs.empty(); }
    Rational coeff(int id) const;
    std::optional<Rational> as_rational() const;

    friend SymbolicReal operator+(const SymbolicReal& a, const SymbolicReal& b);
    friend SymbolicReal operator-(const SymbolicReal& a, const SymbolicReal& b);
    friend SymbolicReal operator-(const SymbolicReal& a);
    friend SymbolicReal operator*(const Rational& c, const SymbolicReal& a);
    friend bool operator==(const SymbolicReal& a, const SymbolicReal& b) = default;
};

// Precisions tried when a sign or comparison must be certified.
inline constexpr int kRefineBits[] = {64, 128, 256};

Interval evaluate(const SymbolicReal& x, const SymbolBasis& basis, int bits);
// True when every symbol used is either 1 or flagged independent, so that
// x == 0 exactly iff all coefficients vanish.
bool exact_zero_test(const SymbolicReal& x, const SymbolBasis& basis);
// Sign certified within the refinement budget, or nullopt.
std::optional<int> certified_sign(const SymbolicReal& x, const SymbolBasis& basis);
// Throws IncomparableEntries when the budget does not separate a and b.
int compare(const SymbolicReal& a, const SymbolicReal& b, const SymbolBasis& basis);

// Degree-2 form sum c_{st} s*t over symbol pairs s <= t.
struct SymbolicProduct {
    std::map<std::pair<int, int>, Rational> coeffs;
    bool is_zero() const { return coeffs.empty(); }
};

SymbolicProduct multiply(const SymbolicReal& a, const SymbolicReal& b);
SymbolicProduct operator-(const SymbolicProduct& a, const SymbolicProduct& b);
Interval evaluate(const SymbolicProduct& x, const SymbolBasis& basis, int bits);
std::optional<int> certified_sign(const SymbolicProduct& x, const SymbolBasis& basis);

std::string to_string(const SymbolicReal& x, const SymbolBasis& basis);

// A constant known only through a fixed enclosure.
Symbol fixed_symbol(std::string name, Interval iv, bool independent = true);
// s_j / ln r and 2 pi / ln r for f in F+ (angles indexed by increasing size).
Symbol salem_angle_symbol(const IntPoly& f, int j);
Symbol salem_period_symbol(const IntPoly& f);

} // namespace cocompact
