#include "cocompact/poly.hpp"
#include "cocompact/errors.hpp"

#include <fmt/format.h>

#include <map>

namespace cocompact {

RatPoly to_rat(const IntPoly& p)
{
    std::vector<Rational> out;
    out.reserve(p.c.size());
    for (const auto& v : p.c)
        out.emplace_back(v);
    return RatPoly(std::move(out));
}

IntPoly to_int(const RatPoly& p)
{
    std::vector<Integer> out;
    out.reserve(p.c.size());
    for (const auto& v : p.c) {
        if (!is_integer(v))
            throw NonExactDivision("coefficient " + to_string(v) + " is not an integer");
        out.push_back(bmp::numerator(v));
    }
    return IntPoly(std::move(out));
}

Integer content(const IntPoly& p)
{
    Integer g = 0;
    for (const auto& v : p.c)
        g = bmp::gcd(g, v);
    return g;
}

IntPoly primitive_part(const IntPoly& p)
{
    if (p.is_zero())
        return p;
    Integer g = content(p);
    if (p.lead() < 0)
        g = -g;
    IntPoly out = p;
    for (auto& v : out.c)
        v /= g;
    return out;
}

IntPoly primitive_part(const RatPoly& p)
{
    if (p.is_zero())
        return {};
    Integer l = 1;
    for (const auto& v : p.c)
        l = bmp::lcm(l, Integer(bmp::denominator(v)));
    std::vector<Integer> out;
    for (const auto& v : p.c)
        out.push_back(bmp::numerator(v) * (l / bmp::denominator(v)));
    return primitive_part(IntPoly(std::move(out)));
}

RatPoly make_monic(const RatPoly& p)
{
    if (p.is_zero())
        return p;
    return Rational(1) / p.lead() * p;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& p, const RatPoly& q)
{
    if (q.is_zero())
        throw PreconditionViolated("polynomial division by zero");
    if (p.degree() < q.degree())
        return {RatPoly{}, p};
    std::vector<Rational> rem = p.c;
    std::vector<Rational> quo(p.c.size() - q.c.size() + 1, Rational(0));
    const Rational& lq = q.lead();
    for (int i = p.degree() - q.degree(); i >= 0; --i) {
        Rational f = rem[i + q.degree()] / lq;
        quo[i] = f;
        if (f == 0)
            continue;
        for (std::size_t j = 0; j < q.c.size(); ++j)
            rem[i + j] -= f * q.c[j];
    }
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

std::pair<IntPoly, IntPoly> divmod(const IntPoly& p, const IntPoly& q)
{
    auto [quo, rem] = divmod(to_rat(p), to_rat(q));
    try {
        return {to_int(quo), to_int(rem)};
    } catch (const NonExactDivision&) {
        throw NonExactDivision(fmt::format("({}) divmod ({}) leaves denominators", to_string(p),
                                           to_string(q)));
    }
}

IntPoly exact_quotient(const IntPoly& p, const IntPoly& q)
{
    auto [quo, rem] = divmod(p, q);
    if (!rem.is_zero())
        throw NonExactDivision(
            fmt::format("({}) does not divide ({})", to_string(q), to_string(p)));
    return quo;
}

bool divides(const IntPoly& q, const IntPoly& p)
{
    return divmod(to_rat(p), to_rat(q)).second.is_zero();
}

IntPoly gcd(const IntPoly& a, const IntPoly& b)
{
    // Primitive remainder sequence keeps coefficients small.
    IntPoly x = primitive_part(a), y = primitive_part(b);
    while (!y.is_zero()) {
        RatPoly r = divmod(to_rat(x), to_rat(y)).second;
        x = y;
        y = primitive_part(r);
    }
    return primitive_part(x);
}

bool is_self_reciprocal(const IntPoly& p)
{
    if (p.is_zero())
        throw PreconditionViolated("is_self_reciprocal of the zero polynomial");
    for (std::size_t i = 0, j = p.c.size() - 1; i < j; ++i, --j)
        if (p.c[i] != p.c[j])
            return false;
    return true;
}

IntPoly trace_poly(const IntPoly& h)
{
    if (h.is_zero() || h.degree() % 2 != 0 || !is_self_reciprocal(h))
        throw PreconditionViolated("trace_poly needs a palindromic polynomial of even degree");
    const int m = h.degree() / 2;
    // D_k(y) = x^k + x^-k as a polynomial in y = x + 1/x.
    IntPoly d_prev = IntPoly{2}, d_cur = IntPoly{0, 1};
    IntPoly y{0, 1};
    IntPoly out = IntPoly::constant(h.c[m]);
    for (int k = 1; k <= m; ++k) {
        out = out + h.c[m + k] * d_cur;
        IntPoly next = y * d_cur - d_prev;
        d_prev = d_cur;
        d_cur = next;
    }
    return out;
}

std::vector<IntPoly> squarefree_decomposition(const IntPoly& p)
{
    if (p.degree() < 1)
        return {};
    std::vector<IntPoly> out;
    RatPoly a = to_rat(gcd(p, p.derivative()));
    RatPoly b = divmod(to_rat(p), a).first;
    RatPoly d = divmod(to_rat(p.derivative()), a).first - b.derivative();
    while (b.degree() > 0) {
        IntPoly ai = gcd(primitive_part(b), primitive_part(d));
        out.push_back(ai);
        RatPoly aq = to_rat(ai);
        b = divmod(b, aq).first;
        d = divmod(d, aq).first - b.derivative();
    }
    return out;
}

IntPoly squarefree_part(const IntPoly& p)
{
    if (p.degree() < 1)
        return IntPoly{1};
    return exact_quotient(primitive_part(p), gcd(p, p.derivative()));
}

bool is_squarefree(const IntPoly& p)
{
    return p.degree() < 1 || gcd(p, p.derivative()).degree() == 0;
}

Rational eval(const IntPoly& p, const Rational& x)
{
    Rational acc = 0;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        acc = acc * x + Rational(*it);
    return acc;
}

int sign_at(const IntPoly& p, const Rational& x)
{
    if (p.is_zero())
        return 0;
    // Homogeneous evaluation: d^deg * p(n/d) with d > 0 has the sign of p(x).
    const Integer n = bmp::numerator(x);
    const Integer d = bmp::denominator(x);
    Integer acc = 0;
    Integer dpow = 1;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        acc = acc * n + *it * dpow;
        dpow *= d;
    }
    return sign(acc);
}

std::vector<IntPoly> sturm_chain(const IntPoly& p)
{
    std::vector<IntPoly> chain;
    if (p.is_zero())
        return chain;
    chain.push_back(p);
    IntPoly d = p.derivative();
    if (d.is_zero())
        return chain;
    // Only positive rescaling, so signs are preserved.
    auto positive_primitive = [](const IntPoly& q) {
        Integer g = content(q);
        IntPoly out = q;
        for (auto& v : out.c)
            v /= g;
        return out;
    };
    chain.push_back(positive_primitive(d));
    while (true) {
        const IntPoly& a = chain[chain.size() - 2];
        const IntPoly& b = chain.back();
        RatPoly r = divmod(to_rat(a), to_rat(b)).second;
        if (r.is_zero())
            break;
        IntPoly ri = primitive_part(r);
        // primitive_part fixes the lead positive; restore the sign of -r.
        if ((r.lead() > 0) == (ri.lead() > 0))
            ri = -ri;
        chain.push_back(ri);
    }
    return chain;
}

namespace {

int sign_variations(const std::vector<IntPoly>& chain, const Rational& x)
{
    int count = 0, last = 0;
    for (const auto& q : chain) {
        int s = sign_at(q, x);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

} // namespace

int count_real_roots(const std::vector<IntPoly>& chain, const Rational& a, const Rational& b)
{
    if (chain.empty() || a >= b)
        return 0;
    return sign_variations(chain, a) - sign_variations(chain, b);
}

int count_real_roots(const IntPoly& p, const Rational& a, const Rational& b)
{
    return count_real_roots(sturm_chain(squarefree_part(p)), a, b);
}

Rational cauchy_bound(const IntPoly& p)
{
    if (p.degree() < 1)
        return Rational(1);
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i)
        m = std::max(m, abs(Rational(p.c[i]) / Rational(p.lead())));
    Rational bound = 1 + m;
    Rational out = 1;
    while (out <= bound)
        out *= 2;
    return out;
}

namespace {

std::map<unsigned, int> factorize(unsigned n)
{
    std::map<unsigned, int> f;
    for (unsigned d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    if (n > 1)
        ++f[n];
    return f;
}

unsigned euler_phi(unsigned n)
{
    unsigned phi = n;
    for (auto [p, e] : factorize(n))
        phi = phi / p * (p - 1);
    return phi;
}

int moebius(unsigned n)
{
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1)
            return 0;
        mu = -mu;
    }
    return mu;
}

} // namespace

IntPoly cyclotomic(unsigned n)
{
    if (n == 0)
        throw PreconditionViolated("cyclotomic(0)");
    // Phi_n = prod_{d | n} (x^d - 1)^mu(n/d)
    IntPoly num{1}, den{1};
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0)
            continue;
        int mu = moebius(n / d);
        IntPoly term = IntPoly::monomial(d) - IntPoly{1};
        if (mu == 1)
            num = num * term;
        else if (mu == -1)
            den = den * term;
    }
    return exact_quotient(num, den);
}

IntPoly roots_of_unity_factor(const IntPoly& p, int degree_bound)
{
    if (!p.is_monic())
        throw PreconditionViolated("roots_of_unity_factor needs a monic polynomial");
    IntPoly rest = p;
    IntPoly out{1};
    if (degree_bound < 1)
        return out;
    const unsigned n_max = 2u * static_cast<unsigned>(degree_bound) * static_cast<unsigned>(degree_bound);
    for (unsigned n = 1; n <= n_max && rest.degree() > 0; ++n) {
        if (euler_phi(n) > static_cast<unsigned>(std::min(degree_bound, rest.degree())))
            continue;
        IntPoly phi = cyclotomic(n);
        while (rest.degree() >= phi.degree()) {
            auto [quo, rem] = divmod(rest, phi);
            if (!rem.is_zero())
                break;
            rest = quo;
            out = out * phi;
        }
    }
    return out;
}

IntPoly roots_of_unity_factor(const IntPoly& p)
{
    return roots_of_unity_factor(p, std::max(p.degree(), 1));
}

namespace {

template <class T>
std::string render(const Poly<T>& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const T& v = p.c[i];
        if (v == 0)
            continue;
        bool neg = v < 0;
        T mag = neg ? T(-v) : v;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string m = to_string(mag);
        if (i == 0)
            out += m;
        else {
            if (mag != 1)
                out += m + "*";
            out += i == 1 ? "x" : "x^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace

std::string to_string(const IntPoly& p) { return render(p); }
std::string to_string(const RatPoly& p) { return render(p); }

std::vector<std::string> to_strings(const IntPoly& p)
{
    std::vector<std::string> out;
    for (const auto& v : p.c)
        out.push_back(v.str());
    return out;
}

IntPoly from_strings(const std::vector<std::string>& coeffs)
{
    std::vector<Integer> out;
    for (const auto& s : coeffs)
        out.push_back(parse_integer(s));
    return IntPoly(std::move(out));
}

} // namespace cocompact
