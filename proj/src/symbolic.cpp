#include "cocompact/symbolic.hpp"

#include "cocompact/errors.hpp"
#include "cocompact/salem.hpp"

namespace cocompact {

SymbolBasis::SymbolBasis()
{
    Symbol one;
    one.name = "1";
    one.value = [](int) { return Interval(Rational(1)); };
    syms_.push_back(std::move(one));
    cache_.emplace_back();
}

int SymbolBasis::add(Symbol s)
{
    if (find(s.name))
        throw PreconditionViolated("duplicate symbol " + s.name);
    if (!s.value)
        throw PreconditionViolated("symbol " + s.name + " has no value");
    syms_.push_back(std::move(s));
    cache_.emplace_back();
    return static_cast<int>(syms_.size() - 1);
}

std::optional<int> SymbolBasis::find(const std::string& name) const
{
    for (std::size_t i = 0; i < syms_.size(); ++i)
        if (syms_[i].name == name)
            return static_cast<int>(i);
    return std::nullopt;
}

Interval SymbolBasis::value(std::size_t i, int bits) const
{
    auto& c = cache_.at(i);
    auto it = c.find(bits);
    if (it != c.end())
        return it->second;
    Interval v = syms_.at(i).value(bits);
    c.emplace(bits, v);
    return v;
}

SymbolicReal SymbolicReal::rational(const Rational& c)
{
    return symbol(0, c);
}

SymbolicReal SymbolicReal::symbol(int id, const Rational& c)
{
    SymbolicReal x;
    if (c != 0)
        x.coeffs.emplace(id, c);
    return x;
}

Rational SymbolicReal::coeff(int id) const
{
    auto it = coeffs.find(id);
    return it == coeffs.end() ? Rational(0) : it->second;
}

std::optional<Rational> SymbolicReal::as_rational() const
{
    if (coeffs.empty())
        return Rational(0);
    if (coeffs.size() == 1 && coeffs.begin()->first == 0)
        return coeffs.begin()->second;
    return std::nullopt;
}

SymbolicReal operator+(const SymbolicReal& a, const SymbolicReal& b)
{
    SymbolicReal out = a;
    for (const auto& [id, c] : b.coeffs) {
        Rational v = out.coeff(id) + c;
        if (v == 0)
            out.coeffs.erase(id);
        else
            out.coeffs[id] = v;
    }
    return out;
}

SymbolicReal operator-(const SymbolicReal& a)
{
    SymbolicReal out = a;
    for (auto& [id, c] : out.coeffs)
        c = -c;
    return out;
}

SymbolicReal operator-(const SymbolicReal& a, const SymbolicReal& b) { return a + (-b); }

SymbolicReal operator*(const Rational& c, const SymbolicReal& a)
{
    if (c == 0)
        return {};
    SymbolicReal out = a;
    for (auto& [id, v] : out.coeffs)
        v *= c;
    return out;
}

Interval evaluate(const SymbolicReal& x, const SymbolBasis& basis, int bits)
{
    Interval acc(Rational(0));
    for (const auto& [id, c] : x.coeffs)
        acc = acc + c * basis.value(id, bits);
    return acc;
}

bool exact_zero_test(const SymbolicReal& x, const SymbolBasis& basis)
{
    for (const auto& [id, c] : x.coeffs)
        if (id != 0 && !basis[id].independent)
            return false;
    return true;
}

std::optional<int> certified_sign(const SymbolicReal& x, const SymbolBasis& basis)
{
    if (auto r = x.as_rational())
        return sign(*r);
    for (int bits : kRefineBits)
        if (auto s = evaluate(x, basis, bits).certain_sign(); s && *s != 0)
            return s;
    return std::nullopt;
}

int compare(const SymbolicReal& a, const SymbolicReal& b, const SymbolBasis& basis)
{
    SymbolicReal d = a - b;
    if (d.is_zero())
        return 0;
    if (auto s = certified_sign(d, basis))
        return *s;
    throw IncomparableEntries(to_string(a, basis) + " vs " + to_string(b, basis) + " after 256 bits");
}

SymbolicProduct multiply(const SymbolicReal& a, const SymbolicReal& b)
{
    SymbolicProduct p;
    for (const auto& [i, ci] : a.coeffs)
        for (const auto& [j, cj] : b.coeffs) {
            auto key = std::minmax(i, j);
            Rational v = p.coeffs[key] + ci * cj;
            if (v == 0)
                p.coeffs.erase(key);
            else
                p.coeffs[key] = v;
        }
    return p;
}

SymbolicProduct operator-(const SymbolicProduct& a, const SymbolicProduct& b)
{
    SymbolicProduct out = a;
    for (const auto& [key, c] : b.coeffs) {
        Rational v = out.coeffs[key] - c;
        if (v == 0)
            out.coeffs.erase(key);
        else
            out.coeffs[key] = v;
    }
    return out;
}

Interval evaluate(const SymbolicProduct& x, const SymbolBasis& basis, int bits)
{
    Interval acc(Rational(0));
    for (const auto& [key, c] : x.coeffs)
        acc = acc + c * (basis.value(key.first, bits) * basis.value(key.second, bits));
    return acc;
}

std::optional<int> certified_sign(const SymbolicProduct& x, const SymbolBasis& basis)
{
    if (x.is_zero())
        return 0;
    for (int bits : kRefineBits)
        if (auto s = evaluate(x, basis, bits).certain_sign(); s && *s != 0)
            return s;
    return std::nullopt;
}

std::string to_string(const SymbolicReal& x, const SymbolBasis& basis)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [id, c] : x.coeffs) {
        Rational m = abs(c);
        if (out.empty())
            out = c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (id == 0)
            out += to_string(m);
        else if (m == 1)
            out += basis[id].name;
        else
            out += to_string(m) + "*" + basis[id].name;
    }
    return out;
}

Symbol fixed_symbol(std::string name, Interval iv, bool independent)
{
    Symbol s;
    s.name = std::move(name);
    s.value = [iv](int) { return iv; };
    s.independent = independent;
    return s;
}

namespace {

Interval log_r(const IntPoly& f, int bits)
{
    return certified::log(salem_r(f, pow2(-bits - 8)), bits + 8);
}

} // namespace

Symbol salem_angle_symbol(const IntPoly& f, int j)
{
    Symbol s;
    s.name = "s" + std::to_string(j + 1) + "/ln(r)";
    s.value = [f, j](int bits) { return salem_angle(f, j, pow2(-bits - 8)) / log_r(f, bits); };
    s.salem = SalemTag{SalemTag::AngleOverLog, f, j};
    return s;
}

Symbol salem_period_symbol(const IntPoly& f)
{
    Symbol s;
    s.name = "2pi/ln(r)";
    s.value = [f](int bits) { return Rational(2) * certified::pi(bits + 8) / log_r(f, bits); };
    s.salem = SalemTag{SalemTag::TwoPiOverLog, f, 0};
    return s;
}

} // namespace cocompact
