#pragma once

#include "cocompact/numeric.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace cocompact {

// Dense univariate polynomial, coefficients lowest degree first.
// Canonical form: no trailing zeros; the zero polynomial is empty.
template <class T>
struct Poly {
    std::vector<T> c;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<long> coeffs)
    {
        for (long v : coeffs)
            c.emplace_back(v);
        trim();
    }

    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(std::size_t k, const T& v = T(1))
    {
        std::vector<T> out(k + 1, T(0));
        out[k] = v;
        return Poly(std::move(out));
    }

    void trim()
    {
        while (!c.empty() && c.back() == 0)
            c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const T& lead() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    T coeff(std::size_t k) const { return k < c.size() ? c[k] : T(0); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return a.c != b.c; }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<T> out(std::max(a.c.size(), b.c.size()), T(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            out[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i)
            out[i] += b.c[i];
        return Poly(std::move(out));
    }
    friend Poly operator-(const Poly& a)
    {
        Poly out = a;
        for (auto& v : out.c)
            v = -v;
        return out;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<T> out(a.c.size() + b.c.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                out[i + j] += a.c[i] * b.c[j];
        }
        return Poly(std::move(out));
    }
    friend Poly operator*(const T& s, const Poly& a)
    {
        Poly out = a;
        for (auto& v : out.c)
            v *= s;
        out.trim();
        return out;
    }

    // Horner evaluation in any ring that T converts into.
    template <class U>
    U eval(const U& x) const
    {
        U acc = U(T(0));
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * x + U(*it);
        return acc;
    }

    Poly derivative() const
    {
        if (c.size() <= 1)
            return {};
        std::vector<T> out(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i)
            out[i - 1] = c[i] * T(static_cast<long>(i));
        return Poly(std::move(out));
    }

    Poly reversed() const
    {
        return Poly(std::vector<T>(c.rbegin(), c.rend()));
    }

    Poly pow(unsigned k) const
    {
        Poly out = constant(T(1));
        for (unsigned i = 0; i < k; ++i)
            out = out * *this;
        return out;
    }
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

RatPoly to_rat(const IntPoly& p);
// Exact conversion; throws NonExactDivision if a coefficient is not integral.
IntPoly to_int(const RatPoly& p);
// Scale to an integer polynomial with coprime coefficients and positive lead.
IntPoly primitive_part(const RatPoly& p);
IntPoly primitive_part(const IntPoly& p);
Integer content(const IntPoly& p);
RatPoly make_monic(const RatPoly& p);

// Quotient and remainder over Q.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& p, const RatPoly& q);
// Integer divmod; throws NonExactDivision unless quotient and remainder are integral.
std::pair<IntPoly, IntPoly> divmod(const IntPoly& p, const IntPoly& q);
// p / q with zero remainder required.
IntPoly exact_quotient(const IntPoly& p, const IntPoly& q);
bool divides(const IntPoly& q, const IntPoly& p);

// Monic gcd over Q, returned as a primitive integer polynomial with positive lead.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

bool is_self_reciprocal(const IntPoly& p);

// For palindromic h of even degree 2m, the H of degree m with h(x) = x^m H(x + 1/x).
IntPoly trace_poly(const IntPoly& h);

// Squarefree decomposition over Q: factors[i] has multiplicity i+1 (Yun).
std::vector<IntPoly> squarefree_decomposition(const IntPoly& p);
IntPoly squarefree_part(const IntPoly& p);
bool is_squarefree(const IntPoly& p);

// Sign of p at a rational point, exact.
int sign_at(const IntPoly& p, const Rational& x);
Rational eval(const IntPoly& p, const Rational& x);

// Sturm chain of a squarefree polynomial.
std::vector<IntPoly> sturm_chain(const IntPoly& p);
// Number of distinct real roots in the half-open interval (a, b].
int count_real_roots(const std::vector<IntPoly>& chain, const Rational& a, const Rational& b);
int count_real_roots(const IntPoly& p, const Rational& a, const Rational& b);
// All roots have modulus strictly below this power of two.
Rational cauchy_bound(const IntPoly& p);

// n-th cyclotomic polynomial.
IntPoly cyclotomic(unsigned n);
// Largest monic factor whose roots are all roots of unity, with multiplicity.
// Orders n with phi(n) <= degree_bound are tried; phi(n) >= sqrt(n/2) so
// n <= 2 * degree_bound^2 suffices.
IntPoly roots_of_unity_factor(const IntPoly& p, int degree_bound);
IntPoly roots_of_unity_factor(const IntPoly& p);

// Human-readable form, e.g. "x^2 - 3*x + 1".
std::string to_string(const IntPoly& p);
std::string to_string(const RatPoly& p);
std::vector<std::string> to_strings(const IntPoly& p);
IntPoly from_strings(const std::vector<std::string>& coeffs);

} // namespace cocompact
