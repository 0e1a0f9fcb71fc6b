#include "cocompact/salem.hpp"
#include "cocompact/errors.hpp"
#include "cocompact/matrix.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace cocompact {

const char* to_string(Rejection r)
{
    switch (r) {
    case Rejection::NotMonic:
        return "not-monic";
    case Rejection::DegreeOdd:
        return "degree-odd";
    case Rejection::DegreeTooSmall:
        return "degree-too-small";
    case Rejection::DegreeBoundExceeded:
        return "degree-bound-exceeded";
    case Rejection::F2RuleViolated:
        return "f2-rule-violated";
    case Rejection::Reducible:
        return "reducible";
    case Rejection::NotSelfReciprocal:
        return "not-self-reciprocal";
    case Rejection::WrongCircleCount:
        return "wrong-circle-count";
    case Rejection::NegativeRealRoots:
        return "negative-real-roots";
    }
    return "?";
}

const char* to_string(Equivalence::Kind k)
{
    switch (k) {
    case Equivalence::Equivalent:
        return "equivalent";
    case Equivalence::NotEquivalent:
        return "not-equivalent";
    default:
        return "unknown";
    }
}

namespace {

// Working precision for MPFR enclosures aimed at width tol.
int bits_for(const Rational& tol)
{
    int b = 0;
    Rational t = tol;
    while (t < 1) {
        t *= 2;
        ++b;
    }
    return b + 32;
}

CertifiedRoot real_certified(const Interval& iv)
{
    CertifiedRoot c;
    c.re = iv;
    c.im = Interval(Rational(0));
    c.is_real = Tri::yes;
    c.on_unit_circle = Tri::no;
    return c;
}

// Roots of the trace polynomial inside (-2, 2), descending, i.e. by
// increasing angle acos(y/2). Intervals are kept strictly inside (-2, 2).
std::vector<Interval> inner_trace_roots(const IntPoly& H, const Rational& tol)
{
    std::vector<Interval> out;
    IntPoly q = squarefree_part(H);
    for (auto iv : isolate_real_roots(H, tol)) {
        if (iv.hi <= -2 || iv.lo >= 2)
            continue;
        while (!iv.is_point() && (iv.lo <= -2 || iv.hi >= 2)) {
            if (iv.contains(Rational(2)) || iv.contains(Rational(-2))) {
                // The root is not +-2 for inputs without roots +-1.
                if (sign_at(q, Rational(2)) == 0 || sign_at(q, Rational(-2)) == 0)
                    throw PreconditionViolated("trace polynomial has a root at +-2");
            }
            iv = refine_real_root(q, iv, iv.width() / 4);
        }
        if (iv.lo > -2 && iv.hi < 2)
            out.push_back(iv);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

struct AngleData {
    Interval s, re, im;
};

AngleData angle_from_trace_root(const IntPoly& Hsf, Interval y, const Rational& tol)
{
    Rational ytol = tol / 4;
    for (int round = 0; round < 64; ++round) {
        y = refine_real_root(Hsf, y, ytol);
        const int bits = bits_for(ytol);
        Interval half = Rational(1, 2) * y;
        AngleData d;
        d.s = certified::acos(half, bits);
        d.re = half;
        Interval one_minus = Interval(Rational(1)) - square(half);
        if (one_minus.lo < 0)
            one_minus.lo = 0;
        d.im = certified::sqrt(one_minus, bits);
        if (d.s.width() <= tol && d.im.width() <= tol && d.re.width() <= tol)
            return d;
        ytol /= Rational(1 << 16);
    }
    throw ToleranceNotReached("angle enclosure did not reach the requested width");
}

std::optional<Rejection> membership(const IntPoly& p, int& k, std::string& detail)
{
    if (!p.is_monic())
        return Rejection::NotMonic;
    if (p.degree() % 2 != 0)
        return Rejection::DegreeOdd;
    if (p.degree() < 2)
        return Rejection::DegreeTooSmall;
    if (p.degree() > kMaxDegree) {
        detail = fmt::format("degree {} exceeds {}", p.degree(), kMaxDegree);
        return Rejection::DegreeBoundExceeded;
    }
    k = p.degree() / 2;
    if (k == 1) {
        // x^2 - a x + 1 with a >= 3
        if (p.c[0] != 1 || -p.c[1] < 3) {
            detail = "expected x^2 - a*x + 1 with a >= 3";
            return Rejection::F2RuleViolated;
        }
        return std::nullopt;
    }
    if (!irreducible_over_Z(p))
        return Rejection::Reducible;
    if (!is_self_reciprocal(p))
        return Rejection::NotSelfReciprocal;
    IntPoly H = trace_poly(p);
    const int inside = count_real_roots(H, Rational(-2), Rational(2));
    if (inside != k - 1) {
        detail = fmt::format("{} roots on the unit circle, expected {}", 2 * inside, 2 * k - 2);
        return Rejection::WrongCircleCount;
    }
    // The one remaining root of H is real and outside [-2, 2].
    Rational b = cauchy_bound(H);
    if (count_real_roots(H, Rational(2), b) == 1)
        return std::nullopt;
    if (count_real_roots(H, -b, Rational(-2)) == 1) {
        detail = "off-circle real roots are negative";
        return Rejection::NegativeRealRoots;
    }
    throw InternalInconsistency("trace polynomial of " + to_string(p) + " lost a real root");
}

} // namespace

SalemData salem_data(const IntPoly& p, const Rational& tol)
{
    SalemData d;
    d.poly = p;
    d.k = p.degree() / 2;
    auto reals = isolate_real_roots(p, tol);
    if (reals.size() != 2 || !(reals[0].lo > 0))
        throw PreconditionViolated(to_string(p) + " does not have two positive real roots");
    d.r_inv = real_certified(reals[0]);
    d.r = real_certified(reals[1]);
    if (d.k >= 2) {
        IntPoly H = trace_poly(p);
        IntPoly Hsf = squarefree_part(H);
        for (const auto& y : inner_trace_roots(H, tol / 4)) {
            AngleData a = angle_from_trace_root(Hsf, y, tol);
            UnitPair u;
            u.s = a.s;
            u.plus.re = u.minus.re = a.re;
            u.plus.im = a.im;
            u.minus.im = -a.im;
            u.plus.is_real = u.minus.is_real = Tri::no;
            u.plus.on_unit_circle = u.minus.on_unit_circle = Tri::yes;
            d.unit_pairs.push_back(u);
        }
        if (static_cast<int>(d.unit_pairs.size()) != d.k - 1)
            throw PreconditionViolated(to_string(p) + " has the wrong number of unit-circle roots");
    }
    return d;
}

Classification classify_F_plus(const IntPoly& p, const Rational& tol)
{
    Classification c;
    int k = 0;
    if (auto why = membership(p, k, c.detail)) {
        c.reason = why;
        return c;
    }
    c.member = true;
    c.k = k;
    c.data = salem_data(p, tol);
    return c;
}

Interval salem_r(const IntPoly& p, const Rational& tol)
{
    auto reals = isolate_real_roots(p, tol);
    if (reals.empty() || !(reals.back().lo > 1))
        throw PreconditionViolated(to_string(p) + " has no real root above 1");
    return reals.back();
}

Interval salem_angle(const IntPoly& p, int j, const Rational& tol)
{
    IntPoly H = trace_poly(p);
    auto ys = inner_trace_roots(H, tol / 4);
    if (j < 0 || j >= static_cast<int>(ys.size()))
        throw PreconditionViolated(fmt::format("angle index {} out of range for {}", j, to_string(p)));
    return angle_from_trace_root(squarefree_part(H), ys[j], tol).s;
}

IntPoly f4_poly(const F4Params& p)
{
    return IntPoly{1, -p.a, p.b, -p.a, 1};
}

bool f4_inequalities(const F4Params& p)
{
    return 2 * p.a > std::abs(p.b + 2) && p.b != 2 && p.b != p.a + 1 && p.b != -p.a + 1;
}

std::vector<F4Params> enumerate_F4(long a_min, long a_max, long b_min, long b_max)
{
    std::vector<F4Params> out;
    for (long a = a_min; a <= a_max; ++a)
        for (long b = b_min; b <= b_max; ++b) {
            F4Params prm{a, b};
            if (!f4_inequalities(prm))
                continue;
            Classification c = classify_F_plus(f4_poly(prm));
            if (!c.member || c.k != 2)
                throw InternalInconsistency(fmt::format(
                    "({}, {}) meets the inequalities but classification says {}", a, b,
                    c.reason ? to_string(*c.reason) : "k != 2"));
            out.push_back(prm);
        }
    return out;
}

Salem4 salem4_closed_form(const F4Params& p, const Rational& tol)
{
    if (!f4_inequalities(p))
        throw PreconditionViolated(fmt::format("({}, {}) violates the F4 inequalities", p.a, p.b));
    const Rational a(p.a), b(p.b);
    const Rational disc = a * a / 4 - b + 2;
    Salem4 out;
    for (int bits = bits_for(tol);; bits *= 2) {
        Interval sq = certified::sqrt(Interval(disc), bits);
        out.t1 = Interval(a / 2) + sq;
        out.t2 = Interval(a / 2) - sq;
        Interval t1sq_minus4 = square(out.t1) - Interval(Rational(4));
        if (t1sq_minus4.lo < 0) // t1 > 2, so this only happens at very low precision
            continue;
        out.r = Rational(1, 2) * (out.t1 + certified::sqrt(t1sq_minus4, bits));
        Interval half = Rational(1, 2) * out.t2;
        if (half.lo < -1 || half.hi > 1)
            continue;
        out.s = certified::acos(half, bits);
        if (out.t1.width() <= tol && out.t2.width() <= tol && out.r.width() <= tol && out.s.width() <= tol)
            break;
        if (bits > 1 << 16)
            throw ToleranceNotReached("closed-form enclosures did not narrow");
    }
    // Cross-check against root isolation of the quartic.
    IntPoly f = f4_poly(p);
    Interval r_iso = salem_r(f, tol);
    bool ok = r_iso.intersects(out.r);
    bool circle_ok = false;
    for (const auto& root : isolate_roots(f, tol))
        if (root.on_unit_circle == Tri::yes && root.im.lo > 0)
            circle_ok = root.re.intersects(Rational(1, 2) * out.t2);
    if (!ok || !circle_ok)
        throw InternalInconsistency(fmt::format("closed form disagrees with root isolation for ({}, {})", p.a, p.b));
    return out;
}

IntPoly power_minpoly(const IntPoly& p, int k)
{
    if (k < 1)
        throw PreconditionViolated("power_minpoly needs k >= 1");
    IntPoly cp = charpoly(companion(p).pow(static_cast<unsigned>(k)));
    IntPoly sf = squarefree_part(cp);
    IntPoly m = exact_quotient(sf, roots_of_unity_factor(sf));
    if (m.degree() < 1)
        throw PreconditionViolated(to_string(p) + " has only roots of unity");
    if (m.degree() <= kMaxDegree && !irreducible_over_Z(m))
        throw InternalInconsistency(fmt::format("non-cyclotomic part of charpoly(C^{}) for {} is reducible", k,
                                                to_string(p)));
    return m;
}

namespace {

Integer squarefree_kernel(Integer n)
{
    Integer out = 1;
    for (Integer d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e % 2 == 1)
            out *= d;
    }
    return out * n;
}

} // namespace

Equivalence salem_equivalent(const IntPoly& p1, const IntPoly& p2, int k_bound)
{
    for (const IntPoly* p : {&p1, &p2}) {
        int k = 0;
        std::string detail;
        if (auto why = membership(*p, k, detail))
            throw PreconditionViolated(to_string(*p) + " is not in F+ (" + to_string(*why) + ")");
    }
    Equivalence e;
    if (p1.degree() != p2.degree()) {
        e.kind = Equivalence::NotEquivalent;
        e.reason = fmt::format("degree mismatch ({} vs {})", p1.degree(), p2.degree());
        return e;
    }
    if (p1.degree() == 2) {
        // Q(r) = Q(sqrt(a^2 - 4)); compare squarefree kernels.
        Integer k1 = squarefree_kernel(p1.c[1] * p1.c[1] - 4);
        Integer k2 = squarefree_kernel(p2.c[1] * p2.c[1] - 4);
        if (k1 != k2) {
            e.kind = Equivalence::NotEquivalent;
            e.reason = fmt::format("fields differ: Q(sqrt({})) vs Q(sqrt({}))", k1.str(), k2.str());
            return e;
        }
    }
    std::map<int, IntPoly> m1, m2;
    auto get = [](std::map<int, IntPoly>& cache, const IntPoly& p, int k) -> const IntPoly& {
        auto it = cache.find(k);
        if (it == cache.end())
            it = cache.emplace(k, power_minpoly(p, k)).first;
        return it->second;
    };
    for (int sum = 2; sum <= 2 * k_bound; ++sum)
        for (int k1 = std::max(1, sum - k_bound); k1 <= std::min(k_bound, sum - 1); ++k1) {
            int k2 = sum - k1;
            if (get(m1, p1, k1) == get(m2, p2, k2)) {
                e.kind = Equivalence::Equivalent;
                e.k1 = k1;
                e.k2 = k2;
                e.reason = "minimal polynomials of r1^k1 and r2^k2 coincide";
                return e;
            }
        }
    e.kind = Equivalence::Unknown;
    e.reason = fmt::format("no power relation with exponents up to {}", k_bound);
    return e;
}

} // namespace cocompact
