#include "cocompact/roots.hpp"
#include "cocompact/errors.hpp"

#include <boost/numeric/interval.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>

namespace cocompact {

const char* to_string(Tri t)
{
    switch (t) {
    case Tri::no:
        return "no";
    case Tri::yes:
        return "yes";
    default:
        return "undetermined";
    }
}

// ---------------------------------------------------------------------------
// Real roots by Sturm bisection.

Interval refine_real_root(const IntPoly& q, Interval iv, const Rational& tol)
{
    if (iv.is_point())
        return iv;
    int sa = sign_at(q, iv.lo), sb = sign_at(q, iv.hi);
    if (sb == 0)
        return Interval(iv.hi);
    if (sa == 0)
        return Interval(iv.lo);
    if (sa == sb)
        throw PreconditionViolated("refine_real_root: no sign change on " + to_string(iv));
    while (iv.width() > tol) {
        Rational m = iv.mid();
        int sm = sign_at(q, m);
        if (sm == 0)
            return Interval(m);
        if (sm == sa)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

std::vector<Interval> isolate_real_roots(const IntPoly& p, const Rational& tol)
{
    if (p.is_zero())
        throw PreconditionViolated("isolate_real_roots of the zero polynomial");
    std::vector<Interval> out;
    if (p.degree() < 1)
        return out;
    IntPoly q = squarefree_part(p);
    auto chain = sturm_chain(q);
    Rational b = cauchy_bound(q);

    struct Piece {
        Rational a, b;
        int n;
    };
    std::vector<Piece> todo{{-b, b, count_real_roots(chain, -b, b)}};
    std::vector<Piece> single;
    while (!todo.empty()) {
        Piece pc = todo.back();
        todo.pop_back();
        if (pc.n == 0)
            continue;
        if (pc.n == 1) {
            single.push_back(pc);
            continue;
        }
        Rational m = (pc.a + pc.b) / 2;
        int left = count_real_roots(chain, pc.a, m);
        todo.push_back({pc.a, m, left});
        todo.push_back({m, pc.b, pc.n - left});
    }
    for (auto& pc : single) {
        // (a, b] holds one root; a may be a root belonging to a neighbour.
        if (sign_at(q, pc.b) == 0) {
            out.emplace_back(pc.b);
            continue;
        }
        while (sign_at(q, pc.a) == 0) {
            Rational m = (pc.a + pc.b) / 2;
            if (count_real_roots(chain, m, pc.b) == 1)
                pc.a = m;
            else
                pc.b = m;
        }
        out.push_back(refine_real_root(q, Interval(pc.a, pc.b), tol));
    }
    std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    return out;
}

// ---------------------------------------------------------------------------
// Complex root disks.

namespace {

namespace bi = boost::numeric;
using DI = bi::interval<double>;

template <class T>
struct Cx {
    T re, im;
    Cx() : re(0), im(0) {}
    Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}
    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(const Cx& a, const Cx& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    T norm() const { return re * re + im * im; }
};

// Exact Gaussian rational division.
Cx<Rational> divide(const Cx<Rational>& a, const Cx<Rational>& b)
{
    Rational n = b.norm();
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

DI enclose(const Integer& v)
{
    double d = v.convert_to<double>();
    if (Integer(d) == v)
        return DI(d);
    double lo = std::nextafter(d, -std::numeric_limits<double>::infinity());
    double hi = std::nextafter(d, std::numeric_limits<double>::infinity());
    return DI(lo, hi);
}

Rational exact(double d) { return Rational(d); }

// Upper bound of an interval of squared radii, as a rational radius bound.
Rational sqrt_upper(const Rational& r2)
{
    if (r2 == 0)
        return Rational(0);
    return certified::sqrt(Interval(r2), 64).hi;
}

// Simultaneous root approximation (Aberth-Ehrlich) in double precision.
std::vector<std::complex<double>> aberth_double(const IntPoly& f)
{
    using C = std::complex<double>;
    const int n = f.degree();
    std::vector<double> c(f.c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = f.c[i].convert_to<double>();
    double bound = 0;
    for (int i = 0; i < n; ++i)
        bound = std::max(bound, std::abs(c[i] / c[n]));
    double radius = std::min(1.0 + bound, 1e150);
    // Starting points on a circle, slightly rotated to break symmetry.
    std::vector<C> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(0.5 * radius + 0.25, 2 * M_PI * k / n + 0.4);
    auto eval = [&](C x, C& p, C& dp) {
        p = c[n];
        dp = 0;
        for (int i = n - 1; i >= 0; --i) {
            dp = dp * x + p;
            p = p * x + c[i];
        }
    };
    auto inv = [](C x) {
        double d = x.real() * x.real() + x.imag() * x.imag();
        return C(x.real() / d, -x.imag() / d);
    };
    double previous = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            C p, dp;
            eval(z[i], p, dp);
            if (p == C(0))
                continue;
            C w = p * inv(dp);
            C s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    s += inv(z[i] - z[j]);
            C step = w * inv(1.0 - w * s);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                continue;
            z[i] -= step;
            worst = std::max(worst, (std::abs(step.real()) + std::abs(step.imag())) / (1 + std::abs(z[i].real()) + std::abs(z[i].imag())));
        }
        // Stop at full double accuracy or once rounding noise dominates.
        if (worst < 1e-15 || (worst < 1e-11 && worst > 0.5 * previous))
            break;
        previous = worst;
    }
    return z;
}

struct Layout {
    // Centers with the symmetry imposed: first n_real real ones, then pairs
    // stored as (z, conj z) consecutively.
    std::vector<double> re, im;
    int n_real = 0;
};

// Impose real/conjugate structure; n_real < 0 means infer it.
std::optional<Layout> snap(std::vector<std::complex<double>> z, int n_real)
{
    const int n = static_cast<int>(z.size());
    std::sort(z.begin(), z.end(), [](auto a, auto b) { return std::abs(a.imag()) < std::abs(b.imag()); });
    if (n_real < 0) {
        n_real = 0;
        while (n_real < n && std::abs(z[n_real].imag()) <= 1e-9 * (1 + std::abs(z[n_real])))
            ++n_real;
    }
    if ((n - n_real) % 2 != 0)
        return std::nullopt;
    Layout out;
    out.n_real = n_real;
    for (int i = 0; i < n_real; ++i) {
        out.re.push_back(z[i].real());
        out.im.push_back(0.0);
    }
    std::vector<std::complex<double>> up, down;
    for (int i = n_real; i < n; ++i)
        (z[i].imag() > 0 ? up : down).push_back(z[i]);
    if (up.size() != down.size())
        return std::nullopt;
    std::vector<bool> used(down.size(), false);
    for (auto u : up) {
        int best = -1;
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < down.size(); ++j) {
            if (used[j])
                continue;
            double d = std::abs(u - std::conj(down[j]));
            if (d < dist) {
                dist = d;
                best = static_cast<int>(j);
            }
        }
        used[best] = true;
        double x = 0.5 * (u.real() + down[best].real());
        double y = 0.5 * (u.imag() - down[best].imag());
        if (!(y > 0))
            return std::nullopt;
        out.re.push_back(x);
        out.im.push_back(y);
        out.re.push_back(x);
        out.im.push_back(-y);
    }
    return out;
}

// Braess-Hadeler inclusion: with W_i = f(z_i) / (lc * prod_{j != i}(z_i - z_j)),
// the disks D(z_i, n|W_i|) cover the roots and every connected component
// made of k disks holds exactly k roots. Radii of conjugate partners are
// equalized so the family is mirror symmetric; a disk that is disjoint from
// all others then holds one root, real iff its center is.
template <class T, class R, class Lift, class Upper>
std::optional<std::vector<R>> weierstrass_radii(const IntPoly& f, const std::vector<Cx<T>>& z, int n_real,
                                                Lift lift, Upper radius_upper)
{
    const int n = static_cast<int>(z.size());
    std::vector<R> r(n);
    T lc = lift(f.lead());
    for (int i = 0; i < n; ++i) {
        Cx<T> p(lift(f.lead()), T(0));
        for (int k = n - 1; k >= 0; --k)
            p = p * z[i] + Cx<T>(lift(f.c[k]), T(0));
        Cx<T> prod(T(1), T(0));
        for (int j = 0; j < n; ++j)
            if (j != i)
                prod = prod * (z[i] - z[j]);
        auto rad = radius_upper(p, prod, lc, n);
        if (!rad)
            return std::nullopt;
        r[i] = *rad;
    }
    for (int i = n_real; i + 1 < n; i += 2) {
        R m = std::max(r[i], r[i + 1]);
        r[i] = r[i + 1] = m;
    }
    return r;
}

bool disjoint(const std::vector<detail::RootDisk>& d)
{
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            Rational dx = d[i].re - d[j].re, dy = d[i].im - d[j].im;
            Rational s = d[i].radius + d[j].radius;
            if (s * s >= dx * dx + dy * dy)
                return false;
        }
    return true;
}

// Disk with double center and a rigorous double radius bound.
struct DDisk {
    double re, im, radius;
};

std::optional<std::vector<DDisk>> certify_double(const IntPoly& f, const Layout& L)
{
    const int n = static_cast<int>(L.re.size());
    std::vector<Cx<DI>> z;
    for (int i = 0; i < n; ++i)
        z.emplace_back(DI(L.re[i]), DI(L.im[i]));
    auto upper = [](const Cx<DI>& p, const Cx<DI>& prod, const DI& lc, int deg) -> std::optional<double> {
        DI np = bi::square(p.re) + bi::square(p.im);
        DI nq = (bi::square(prod.re) + bi::square(prod.im)) * bi::square(lc);
        if (!(bi::lower(nq) > 0) || !std::isfinite(bi::upper(np)))
            return std::nullopt;
        DI r = DI(static_cast<double>(deg)) * bi::sqrt(np / nq);
        if (!std::isfinite(bi::upper(r)))
            return std::nullopt;
        return bi::upper(r);
    };
    auto radii = weierstrass_radii<DI, double>(f, z, L.n_real, enclose, upper);
    if (!radii)
        return std::nullopt;
    std::vector<DDisk> out;
    for (int i = 0; i < n; ++i)
        out.push_back({L.re[i], L.im[i], (*radii)[i]});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            DI dx = DI(out[i].re) - DI(out[j].re), dy = DI(out[i].im) - DI(out[j].im);
            DI s = DI(out[i].radius) + DI(out[j].radius);
            if (!(bi::upper(bi::square(s)) < bi::lower(bi::square(dx) + bi::square(dy))))
                return std::nullopt;
        }
    return out;
}

std::vector<detail::RootDisk> to_rational(const std::vector<DDisk>& d)
{
    std::vector<detail::RootDisk> out;
    for (const auto& x : d)
        out.push_back({exact(x.re), exact(x.im), exact(x.radius)});
    return out;
}

Rational round_bits(const Rational& x, int bits)
{
    Rational scale = pow2(bits);
    return Rational(floor(x * scale + Rational(1, 2))) / scale;
}

// Aberth iteration in exact dyadic arithmetic, keeping the real/conjugate layout.
std::vector<Cx<Rational>> polish(const IntPoly& f, std::vector<Cx<Rational>> z, int n_real, int bits)
{
    const int n = static_cast<int>(z.size());
    IntPoly df = f.derivative();
    auto horner = [](const IntPoly& g, const Cx<Rational>& x) {
        Cx<Rational> acc;
        for (auto it = g.c.rbegin(); it != g.c.rend(); ++it)
            acc = acc * x + Cx<Rational>(Rational(*it), Rational(0));
        return acc;
    };
    const Rational target = pow2(-2 * bits + 8);
    for (int iter = 0; iter < 200; ++iter) {
        Rational worst = 0;
        for (int i = 0; i < n; ++i) {
            bool pair_head = i >= n_real && (i - n_real) % 2 == 0;
            if (i >= n_real && !pair_head)
                continue;
            Cx<Rational> p = horner(f, z[i]);
            if (p.re == 0 && p.im == 0)
                continue;
            Cx<Rational> dp = horner(df, z[i]);
            if (dp.re == 0 && dp.im == 0)
                continue;
            Cx<Rational> w = divide(p, dp);
            Cx<Rational> s;
            bool clash = false;
            for (int j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                Cx<Rational> d = z[i] - z[j];
                if (d.re == 0 && d.im == 0) {
                    clash = true;
                    break;
                }
                s = s + divide(Cx<Rational>(Rational(1), Rational(0)), d);
            }
            Cx<Rational> denom = Cx<Rational>(Rational(1), Rational(0)) - w * s;
            Cx<Rational> step = (clash || (denom.re == 0 && denom.im == 0)) ? w : divide(w, denom);
            Cx<Rational> next(round_bits(z[i].re - step.re, bits), round_bits(z[i].im - step.im, bits));
            if (i < n_real)
                next.im = 0;
            worst = std::max(worst, (next - z[i]).norm());
            z[i] = next;
            if (pair_head) {
                if (z[i].im <= 0)
                    z[i].im = pow2(-bits);
                z[i + 1] = Cx<Rational>(z[i].re, -z[i].im);
            }
        }
        if (worst <= target)
            break;
    }
    return z;
}

std::optional<std::vector<detail::RootDisk>> certify_exact(const IntPoly& f, const std::vector<Cx<Rational>>& z,
                                                           int n_real)
{
    auto lift = [](const Integer& v) { return Rational(v); };
    auto upper = [](const Cx<Rational>& p, const Cx<Rational>& prod, const Rational& lc,
                    int deg) -> std::optional<Rational> {
        Rational nq = prod.norm() * lc * lc;
        if (nq == 0)
            return std::nullopt;
        return Rational(deg) * sqrt_upper(p.norm() / nq);
    };
    auto radii = weierstrass_radii<Rational, Rational>(f, z, n_real, lift, upper);
    if (!radii)
        return std::nullopt;
    std::vector<detail::RootDisk> out;
    for (std::size_t i = 0; i < z.size(); ++i)
        out.push_back({z[i].re, z[i].im, (*radii)[i]});
    if (!disjoint(out))
        return std::nullopt;
    return out;
}

bool small_enough(const std::vector<detail::RootDisk>& d, const Rational& max_radius)
{
    if (max_radius <= 0)
        return true;
    return std::all_of(d.begin(), d.end(), [&](const auto& x) { return x.radius <= max_radius; });
}

int bits_for(const Rational& max_radius)
{
    if (max_radius <= 0)
        return 0;
    int b = 0;
    Rational r = max_radius;
    while (r < 1) {
        r *= 2;
        ++b;
    }
    return b;
}

constexpr int kMaxBits = 16384;

// Disks for squarefree f; the double attempt first, then exact dyadic
// polishing at growing precision. `start_bits` skips the cheap attempts.
std::vector<detail::RootDisk> disks_impl(const IntPoly& f, const Rational& max_radius, bool try_double)
{
    auto approx = aberth_double(f);
    if (try_double) {
        if (auto L = snap(approx, -1)) {
            if (auto d = certify_double(f, *L)) {
                auto r = to_rational(*d);
                if (small_enough(r, max_radius))
                    return r;
            }
        }
    }
    const int n_real = static_cast<int>(isolate_real_roots(f, Rational(1, 4)).size());
    auto L = snap(approx, n_real);
    if (!L)
        throw ToleranceNotReached("could not pair approximate roots of " + to_string(f));
    std::vector<Cx<Rational>> z;
    for (std::size_t i = 0; i < L->re.size(); ++i)
        z.emplace_back(exact(L->re[i]), exact(L->im[i]));
    for (int bits = std::max(96, bits_for(max_radius) + 16); bits <= kMaxBits; bits *= 2) {
        z = polish(f, z, n_real, bits);
        if (auto d = certify_exact(f, z, n_real); d && small_enough(*d, max_radius))
            return *d;
    }
    throw ToleranceNotReached("root disks of " + to_string(f) + " did not separate");
}

} // namespace

std::vector<detail::RootDisk> detail::certified_disks(const IntPoly& f, const Rational& max_radius)
{
    if (f.degree() < 1)
        return {};
    if (f.degree() == 1) {
        Rational x = Rational(-f.c[0]) / Rational(f.c[1]);
        return {{x, Rational(0), Rational(0)}};
    }
    return disks_impl(f, max_radius, true);
}

// ---------------------------------------------------------------------------
// Full isolation.

namespace {

CertifiedRoot real_root(const Interval& iv, int mult, Tri circle)
{
    CertifiedRoot r;
    r.re = iv;
    r.im = Interval(Rational(0));
    r.multiplicity = mult;
    r.is_real = Tri::yes;
    r.on_unit_circle = circle;
    return r;
}

CertifiedRoot disk_root(const detail::RootDisk& d, int mult, Tri circle)
{
    CertifiedRoot r;
    r.re = Interval(d.re - d.radius, d.re + d.radius);
    r.im = Interval(d.im - d.radius, d.im + d.radius);
    r.multiplicity = mult;
    r.is_real = Tri::no;
    r.on_unit_circle = circle;
    return r;
}

bool meets_unit_circle(const detail::RootDisk& d)
{
    Rational m2 = d.re * d.re + d.im * d.im;
    Rational hi = (1 + d.radius) * (1 + d.radius);
    if (m2 > hi)
        return false;
    if (d.radius >= 1)
        return true;
    Rational lo = (1 - d.radius) * (1 - d.radius);
    return m2 >= lo;
}

// Roots of a squarefree factor g that has none of modulus one, or that is
// handled with a fixed circle status.
void append_plain(const IntPoly& g, int mult, const Rational& tol, Tri circle, std::vector<CertifiedRoot>& out)
{
    if (g.degree() < 1)
        return;
    auto reals = isolate_real_roots(g, tol);
    for (const auto& iv : reals)
        out.push_back(real_root(iv, mult, circle));
    if (static_cast<int>(reals.size()) == g.degree())
        return;
    auto disks = detail::certified_disks(g, tol / 2);
    int real_disks = 0;
    for (const auto& d : disks) {
        if (d.im == 0)
            ++real_disks;
        else
            out.push_back(disk_root(d, mult, circle));
    }
    if (real_disks != static_cast<int>(reals.size()))
        throw InternalInconsistency(
            fmt::format("{}: {} real disks but {} Sturm roots", to_string(g), real_disks, reals.size()));
}

// Palindromic squarefree h without roots at +-1: decide circle status per root.
void append_palindromic(const IntPoly& h, int mult, const Rational& tol, std::vector<CertifiedRoot>& out)
{
    if (h.degree() < 1)
        return;
    IntPoly H = trace_poly(primitive_part(h));
    const int on_circle = 2 * count_real_roots(H, Rational(-2), Rational(2));
    auto reals = isolate_real_roots(h, tol);
    for (const auto& iv : reals)
        out.push_back(real_root(iv, mult, Tri::no));
    if (static_cast<int>(reals.size()) == h.degree())
        return;
    Rational radius = tol / 2;
    for (int round = 0; round < 40; ++round) {
        auto disks = detail::certified_disks(h, radius);
        int meets = 0, real_disks = 0;
        for (const auto& d : disks) {
            if (d.im == 0)
                ++real_disks;
            else if (meets_unit_circle(d))
                ++meets;
        }
        if (real_disks != static_cast<int>(reals.size()))
            throw InternalInconsistency(to_string(h) + ": real disk count disagrees with Sturm count");
        if (meets < on_circle)
            throw InternalInconsistency(to_string(h) + ": fewer disks meet the unit circle than the trace count");
        if (meets == on_circle) {
            for (const auto& d : disks)
                if (d.im != 0)
                    out.push_back(disk_root(d, mult, meets_unit_circle(d) ? Tri::yes : Tri::no));
            return;
        }
        radius /= Rational(1 << 16);
    }
    // Refinement budget exhausted: report what is known.
    for (const auto& d : detail::certified_disks(h, radius))
        if (d.im != 0)
            out.push_back(disk_root(d, mult, meets_unit_circle(d) ? Tri::undetermined : Tri::no));
}

} // namespace

std::vector<CertifiedRoot> isolate_roots(const IntPoly& p, const Rational& tol)
{
    if (p.is_zero())
        throw PreconditionViolated("isolate_roots of the zero polynomial");
    if (tol <= 0)
        throw PreconditionViolated("isolate_roots needs a positive tolerance");
    std::vector<CertifiedRoot> out;
    auto factors = squarefree_decomposition(p);
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const int mult = static_cast<int>(k) + 1;
        IntPoly g = factors[k];
        if (g.degree() < 1)
            continue;
        // Roots of modulus one are closed under z -> 1/z, so they sit in gcd(g, reversed g).
        IntPoly c = gcd(g, g.reversed());
        IntPoly rest = exact_quotient(g, c);
        append_plain(rest, mult, tol, Tri::no, out);
        for (int s : {1, -1}) {
            if (sign_at(c, Rational(s)) == 0) {
                out.push_back(real_root(Interval(Rational(s)), mult, Tri::yes));
                c = exact_quotient(c, IntPoly{-s, 1});
            }
        }
        append_palindromic(c, mult, tol, out);
    }
    std::sort(out.begin(), out.end(), [](const CertifiedRoot& a, const CertifiedRoot& b) {
        bool ar = a.is_real == Tri::yes, br = b.is_real == Tri::yes;
        if (ar != br)
            return ar;
        if (a.re.mid() != b.re.mid())
            return a.re.mid() < b.re.mid();
        return a.im.mid() > b.im.mid();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Irreducibility.

namespace {

enum class Verdict { irreducible, reducible, undecided };

// Interval helpers shared by the double and rational variants.
inline double lo_of(const DI& x) { return bi::lower(x); }
inline double hi_of(const DI& x) { return bi::upper(x); }
inline const Rational& lo_of(const Interval& x) { return x.lo; }
inline const Rational& hi_of(const Interval& x) { return x.hi; }
inline DI sq(const DI& x) { return bi::square(x); }
inline Interval sq(const Interval& x) { return square(x); }
inline std::optional<Integer> only_integer(const DI& x)
{
    double a = std::ceil(bi::lower(x)), b = std::floor(bi::upper(x));
    if (a == b && std::abs(a) < 9e15)
        return Integer(static_cast<long long>(a));
    return std::nullopt;
}
inline std::optional<Integer> only_integer(const Interval& x)
{
    Integer a = ceil(x.lo), b = floor(x.hi);
    if (a == b)
        return a;
    return std::nullopt;
}
inline bool has_integer(const DI& x) { return std::ceil(bi::lower(x)) <= std::floor(bi::upper(x)); }
inline bool has_integer(const Interval& x) { return ceil(x.lo) <= floor(x.hi); }

template <class I>
using IPoly = std::vector<I>;

template <class I>
IPoly<I> mul(const IPoly<I>& a, const IPoly<I>& b)
{
    IPoly<I> out(a.size() + b.size() - 1, I(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

// Factors of the disks: real roots give x - r, conjugate pairs give
// x^2 - 2 Re z x + |z|^2.
template <class I, class MakeI>
std::vector<IPoly<I>> unit_factors(const std::vector<detail::RootDisk>& disks, MakeI make)
{
    std::vector<IPoly<I>> units;
    for (std::size_t i = 0; i < disks.size(); ++i) {
        const auto& d = disks[i];
        I re = make(d.re - d.radius, d.re + d.radius);
        if (d.im == 0) {
            units.push_back({I(0) - re, I(1)});
            continue;
        }
        if (d.im < 0)
            continue;
        I im = make(d.im - d.radius, d.im + d.radius);
        units.push_back({sq(re) + sq(im), I(-2) * re, I(1)});
    }
    return units;
}

template <class I>
struct SubsetSearch {
    const IntPoly& f;
    const std::vector<IPoly<I>>& units;
    int max_degree;
    bool undecided = false;

    // Returns true when an exact factor is found.
    bool dfs(std::size_t start, const IPoly<I>& prod)
    {
        for (std::size_t u = start; u < units.size(); ++u) {
            IPoly<I> next = mul(prod, units[u]);
            int deg = static_cast<int>(next.size()) - 1;
            if (deg > max_degree)
                continue;
            if (test(next))
                return true;
            if (dfs(u + 1, next))
                return true;
        }
        return false;
    }

    bool test(const IPoly<I>& g)
    {
        std::vector<Integer> cand;
        bool ambiguous = false;
        for (const auto& c : g) {
            if (!has_integer(c))
                return false;
            auto v = only_integer(c);
            if (!v)
                ambiguous = true;
            else
                cand.push_back(*v);
        }
        if (ambiguous) {
            undecided = true;
            return false;
        }
        return divides(IntPoly(cand), f);
    }
};

template <class I>
Verdict search_subsets(const IntPoly& f, const std::vector<IPoly<I>>& units)
{
    SubsetSearch<I> s{f, units, f.degree() / 2};
    if (s.dfs(0, IPoly<I>{I(1)}))
        return Verdict::reducible;
    return s.undecided ? Verdict::undecided : Verdict::irreducible;
}

Verdict decide_double(const IntPoly& f, const std::vector<DDisk>& disks)
{
    std::vector<IPoly<DI>> units;
    for (const auto& d : disks) {
        DI re = DI(d.re) + DI(-d.radius, d.radius);
        if (d.im == 0) {
            units.push_back({DI(0) - re, DI(1)});
        } else if (d.im > 0) {
            DI im = DI(d.im) + DI(-d.radius, d.radius);
            units.push_back({sq(re) + sq(im), DI(-2) * re, DI(1)});
        }
    }
    return search_subsets<DI>(f, units);
}

Verdict decide_exact(const IntPoly& f, const std::vector<detail::RootDisk>& disks)
{
    auto make = [](const Rational& lo, const Rational& hi) { return Interval(lo, hi); };
    return search_subsets<Interval>(f, unit_factors<Interval>(disks, make));
}

bool has_integer_root(const IntPoly& f)
{
    const Integer a0 = f.c[0];
    if (a0 == 0)
        return true;
    Integer m = a0 < 0 ? Integer(-a0) : a0;
    if (m > 1000000) {
        for (long s : {1L, -1L})
            if (sign_at(f, Rational(s)) == 0)
                return true;
        return false; // large constant terms are left to the subset search
    }
    const long mm = m.convert_to<long>();
    for (long d = 1; d * d <= mm; ++d) {
        if (mm % d != 0)
            continue;
        for (long c : {d, -d, mm / d, -(mm / d)})
            if (sign_at(f, Rational(c)) == 0)
                return true;
    }
    return false;
}

} // namespace

bool irreducible_over_Z(const IntPoly& p)
{
    if (!p.is_monic())
        throw PreconditionViolated("irreducible_over_Z needs a monic polynomial");
    if (p.degree() > kMaxDegree)
        throw DegreeBoundExceeded(fmt::format("degree {} exceeds {}", p.degree(), kMaxDegree));
    if (p.degree() < 1)
        return false; // units are not irreducible
    if (p.degree() == 1)
        return true;
    if (has_integer_root(p))
        return false;
    if (p.degree() <= 3)
        return true; // a factorization would include a linear factor

    auto approx = aberth_double(p);
    if (auto L = snap(approx, -1)) {
        if (auto d = certify_double(p, *L)) {
            Verdict v = decide_double(p, *d);
            if (v != Verdict::undecided)
                return v == Verdict::irreducible;
        }
    }
    if (!is_squarefree(p))
        return false;
    Rational radius = Rational(1, 1024);
    for (int round = 0; round < 24; ++round) {
        auto d = disks_impl(p, radius, false);
        Verdict v = decide_exact(p, d);
        if (v != Verdict::undecided)
            return v == Verdict::irreducible;
        radius /= Rational(1 << 20);
    }
    throw ToleranceNotReached("irreducibility of " + to_string(p) + " left undecided");
}

} // namespace cocompact
