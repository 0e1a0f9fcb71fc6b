#include "cocompact/errors.hpp"
#include "cocompact/poly.hpp"
#include "cocompact/roots.hpp"
#include "factor_oracle.hpp"
#include "gen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

using namespace cocompact;

namespace {

const Rational kTol12 = Rational(1, 1000000000000LL);

IntPoly monic_from_low(std::vector<long> low)
{
    std::vector<Integer> c(low.begin(), low.end());
    c.emplace_back(1);
    return IntPoly(c);
}

} // namespace

TEST(PolyArith, MonomialShift)
{
    EXPECT_EQ(IntPoly({1, -3, 1}) * IntPoly({0, 0, 1}), IntPoly({0, 0, 1, -3, 1}));
}

TEST(PolyArith, AddSubCancel)
{
    IntPoly a{1, 2, 3};
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a + IntPoly({0, 0, -3}), IntPoly({1, 2}));
    EXPECT_EQ((a + IntPoly({0, 0, -3})).degree(), 1);
}

TEST(PolyArith, DivmodFactorIdentity)
{
    auto [q, r] = divmod(IntPoly{-1, 0, 1}, IntPoly{-1, 1});
    EXPECT_EQ(q, IntPoly({1, 1}));
    EXPECT_TRUE(r.is_zero());
}

TEST(PolyArith, DivmodWithDenominatorsThrows)
{
    EXPECT_THROW(divmod(IntPoly{1, 0, 1}, IntPoly{0, 2}), NonExactDivision);
    EXPECT_THROW(exact_quotient(IntPoly{1, -3, 3, -3, 1}, IntPoly{1, -3, 1}), NonExactDivision);
}

TEST(PolyArith, DivmodReconstructs)
{
    gen::Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        IntPoly p = gen::poly(rng, rng.uniform(0, 8), 20);
        IntPoly q = gen::monic(rng, rng.uniform(1, 5), 20);
        auto [quo, rem] = divmod(p, q);
        EXPECT_EQ(quo * q + rem, p);
        EXPECT_LT(rem.degree(), q.degree());
    }
}

TEST(PolyArith, GcdOfProducts)
{
    gen::Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        IntPoly a = gen::monic(rng, rng.uniform(1, 4), 6);
        IntPoly b = gen::monic(rng, rng.uniform(1, 4), 6);
        IntPoly c = gen::monic(rng, rng.uniform(1, 3), 6);
        IntPoly g = gcd(a * c, b * c);
        EXPECT_TRUE(divides(c, g)) << to_string(a) << " | " << to_string(b) << " | " << to_string(c);
        EXPECT_TRUE(divides(g, a * c));
        EXPECT_TRUE(divides(g, b * c));
    }
}

TEST(SelfReciprocal, Examples)
{
    EXPECT_TRUE(is_self_reciprocal(IntPoly{1, -3, 3, -3, 1}));
    EXPECT_TRUE(is_self_reciprocal(IntPoly{1, 0, -1, -1, -1, 0, 1}));
    EXPECT_FALSE(is_self_reciprocal(IntPoly{2, -3, 1}));
    EXPECT_THROW(is_self_reciprocal(IntPoly{}), PreconditionViolated);
}

TEST(SelfReciprocal, MatchesReversalIdentity)
{
    gen::Rng rng(13);
    for (int t = 0; t < 500; ++t) {
        IntPoly p = rng.coin() ? gen::palindromic(rng, rng.uniform(1, 6), 5) : gen::monic(rng, rng.uniform(1, 8), 3);
        if (p.c[0] == 0)
            continue;
        // x^deg p(1/x) is the reversed coefficient list.
        EXPECT_EQ(is_self_reciprocal(p), (p - p.reversed()).is_zero()) << to_string(p);
    }
}

TEST(TracePoly, SubstitutionIdentity)
{
    // h(x) = x^m H(x + 1/x) checked by expanding x^m H((x^2+1)/x).
    gen::Rng rng(14);
    for (int t = 0; t < 100; ++t) {
        IntPoly h = gen::palindromic(rng, rng.uniform(1, 6), 6);
        IntPoly H = trace_poly(h);
        const int m = h.degree() / 2;
        ASSERT_EQ(H.degree(), m);
        IntPoly num{1, 0, 1};
        IntPoly acc;
        for (int k = 0; k <= m; ++k)
            acc = acc + H.c[k] * (num.pow(k) * IntPoly::monomial(m - k));
        EXPECT_EQ(acc, h);
    }
    EXPECT_EQ(trace_poly(IntPoly{1, -3, 3, -3, 1}), IntPoly({1, -3, 1}));
}

TEST(Squarefree, DecompositionReconstructs)
{
    gen::Rng rng(15);
    for (int t = 0; t < 200; ++t) {
        IntPoly a = gen::monic(rng, rng.uniform(1, 3), 5);
        IntPoly b = gen::monic(rng, rng.uniform(1, 2), 5);
        IntPoly p = a * b * b;
        auto f = squarefree_decomposition(p);
        IntPoly prod{1};
        int deg = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            prod = prod * f[i].pow(static_cast<unsigned>(i + 1));
            deg += static_cast<int>(i + 1) * f[i].degree();
            EXPECT_TRUE(is_squarefree(f[i]));
        }
        EXPECT_EQ(prod, p) << to_string(p);
        EXPECT_EQ(deg, p.degree());
    }
}

TEST(Sturm, CountsAgreeWithIsolation)
{
    EXPECT_EQ(count_real_roots(IntPoly{1, -3, 1}, Rational(0), Rational(3)), 2);
    EXPECT_EQ(count_real_roots(IntPoly{1, 0, 1}, Rational(-10), Rational(10)), 0);
    EXPECT_EQ(count_real_roots(IntPoly{0, -1, 0, 1}, Rational(-1), Rational(1)), 2); // (-1, 1]
    gen::Rng rng(16);
    for (int t = 0; t < 200; ++t) {
        IntPoly p = gen::monic(rng, rng.uniform(1, 8), 6);
        auto roots = isolate_real_roots(p, Rational(1, 1024));
        Rational b = cauchy_bound(p);
        EXPECT_EQ(static_cast<int>(roots.size()), count_real_roots(p, -b, b));
        IntPoly q = squarefree_part(p);
        for (const auto& iv : roots) {
            EXPECT_LE(iv.width(), Rational(1, 1024));
            if (iv.is_point())
                EXPECT_EQ(sign_at(q, iv.lo), 0);
            else
                EXPECT_NE(sign_at(q, iv.lo), sign_at(q, iv.hi));
        }
    }
}

TEST(IsolateRoots, GoldenQuadratic)
{
    auto roots = isolate_roots(IntPoly{1, -3, 1}, kTol12);
    ASSERT_EQ(roots.size(), 2u);
    // Exact oracle: the roots are (3 -+ sqrt5)/2, so 2x - 3 brackets -+sqrt5.
    for (int k = 0; k < 2; ++k) {
        const auto& r = roots[k];
        EXPECT_EQ(r.is_real, Tri::yes);
        EXPECT_EQ(r.on_unit_circle, Tri::no);
        EXPECT_LE(r.re.width(), kTol12);
        Rational lo = 2 * r.re.lo - 3, hi = 2 * r.re.hi - 3;
        if (k == 0) {
            EXPECT_TRUE(lo < 0 && hi < 0 && lo * lo > 5 && hi * hi < 5);
        } else {
            EXPECT_TRUE(lo > 0 && lo * lo < 5 && hi * hi > 5);
        }
    }
    EXPECT_NEAR(to_double(roots[1].re.mid()), 2.6180339887, 1e-10);
    EXPECT_NEAR(to_double(roots[0].re.mid()), 0.3819660113, 1e-10);
}

TEST(IsolateRoots, ImaginaryUnit)
{
    auto roots = isolate_roots(IntPoly{1, 0, 1}, kTol12);
    ASSERT_EQ(roots.size(), 2u);
    for (const auto& r : roots) {
        EXPECT_EQ(r.on_unit_circle, Tri::yes);
        EXPECT_EQ(r.is_real, Tri::no);
        EXPECT_TRUE(r.re.contains(0));
        EXPECT_LE(r.im.width(), kTol12);
    }
    EXPECT_TRUE(roots[0].im.contains(1));
    EXPECT_TRUE(roots[1].im.contains(-1));
}

TEST(IsolateRoots, QuarticTwoRealTwoOnCircle)
{
    auto roots = isolate_roots(IntPoly{1, -3, 3, -3, 1}, kTol12);
    ASSERT_EQ(roots.size(), 4u);
    int real_positive = 0, circle = 0;
    for (const auto& r : roots) {
        if (r.is_real == Tri::yes && r.re.lo > 0)
            ++real_positive;
        if (r.on_unit_circle == Tri::yes)
            ++circle;
    }
    EXPECT_EQ(real_positive, 2);
    EXPECT_EQ(circle, 2);
}

TEST(IsolateRoots, MultiplicitiesAndExactUnitRoots)
{
    // (x-1)^2 (x+1) (x^2+x+1)^3
    IntPoly p = IntPoly{-1, 1}.pow(2) * IntPoly{1, 1} * IntPoly{1, 1, 1}.pow(3);
    auto roots = isolate_roots(p, kTol12);
    int total = 0;
    for (const auto& r : roots) {
        total += r.multiplicity;
        EXPECT_EQ(r.on_unit_circle, Tri::yes);
    }
    EXPECT_EQ(total, p.degree());
    EXPECT_EQ(roots[0].re, Interval(Rational(-1)));
    EXPECT_EQ(roots[1].re, Interval(Rational(1)));
    EXPECT_EQ(roots[1].multiplicity, 2);
}

TEST(IsolateRoots, TightToleranceTakesExactPath)
{
    Rational tol = pow2(-200);
    auto roots = isolate_roots(IntPoly{1, 0, -1, -1, -1, 0, 1}, tol);
    ASSERT_EQ(roots.size(), 6u);
    int circle = 0;
    for (const auto& r : roots) {
        EXPECT_LE(r.re.width(), tol);
        EXPECT_LE(r.im.width(), tol);
        circle += r.on_unit_circle == Tri::yes;
    }
    EXPECT_EQ(circle, 4);
}

// Random monic polynomials of degree <= 8 with coefficients in [-5, 5].
TEST(IsolateRoots, RandomPropertySuite)
{
    gen::Rng rng(17);
    const Rational tol(1, 1 << 30);
    for (int t = 0; t < 300; ++t) {
        IntPoly p = gen::monic(rng, rng.uniform(1, 8), 5);
        if (rng.uniform(0, 3) == 0)
            p = p * gen::monic(rng, rng.uniform(1, 2), 2); // repeated factors now and then
        auto roots = isolate_roots(p, tol);
        int total = 0;
        for (const auto& r : roots) {
            total += r.multiplicity;
            EXPECT_LE(r.re.width(), tol);
            EXPECT_LE(r.im.width(), tol);
            EXPECT_NE(r.on_unit_circle, Tri::undetermined) << to_string(p);
            // Residual at the box center is bounded by sup|p'| times the distance to the root.
            std::complex<double> c(to_double(r.re.mid()), to_double(r.im.mid()));
            double w = to_double(std::max(r.re.width(), r.im.width()));
            double reach = std::abs(c) + w;
            double dbound = 0;
            for (int k = 1; k <= p.degree(); ++k)
                dbound += k * std::abs(p.c[k].convert_to<double>()) * std::pow(reach, k - 1);
            std::complex<double> val = 0;
            for (int k = p.degree(); k >= 0; --k)
                val = val * c + p.c[k].convert_to<double>();
            double rounding = 1e-12 * (1 + std::pow(reach, p.degree())) * 64;
            EXPECT_LE(std::abs(val), dbound * w + rounding) << to_string(p);
        }
        EXPECT_EQ(total, p.degree()) << to_string(p);
        // Boxes of distinct roots are disjoint.
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                EXPECT_FALSE(roots[i].re.intersects(roots[j].re) && roots[i].im.intersects(roots[j].im))
                    << to_string(p);
        // Factor reconstruction: the squarefree decomposition multiplies back to p.
        auto f = squarefree_decomposition(p);
        IntPoly prod{1};
        for (std::size_t i = 0; i < f.size(); ++i)
            prod = prod * f[i].pow(static_cast<unsigned>(i + 1));
        EXPECT_EQ(prod, p);
    }
}

TEST(Irreducible, Examples)
{
    EXPECT_TRUE(irreducible_over_Z(IntPoly{1, -3, 1}));
    EXPECT_FALSE(irreducible_over_Z(IntPoly{1, 0, -2, 0, 1}));
    EXPECT_TRUE(irreducible_over_Z(IntPoly{1, 0, -1, -1, -1, 0, 1}));
    EXPECT_TRUE(irreducible_over_Z(IntPoly{-1, 1}));
    EXPECT_FALSE(irreducible_over_Z(IntPoly{1, 1, 1}.pow(2)));
    // Lehmer's polynomial.
    EXPECT_TRUE(irreducible_over_Z(IntPoly{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}));
    // Swinnerton-Dyer style: x^4 - 10x^2 + 1 has no linear or rational quadratic factor.
    EXPECT_TRUE(irreducible_over_Z(IntPoly{1, 0, -10, 0, 1}));
    EXPECT_FALSE(irreducible_over_Z(IntPoly{1, 0, -10, 0, 1} * IntPoly{2, 0, 1}));
}

TEST(Irreducible, Preconditions)
{
    EXPECT_THROW(irreducible_over_Z(IntPoly{1, 1}.pow(17)), DegreeBoundExceeded);
    EXPECT_THROW(irreducible_over_Z(IntPoly{1, 0, 2}), PreconditionViolated);
}

TEST(Irreducible, ProductsOfRandomFactorsAreReducible)
{
    gen::Rng rng(18);
    for (int t = 0; t < 200; ++t) {
        IntPoly a = gen::monic(rng, rng.uniform(1, 8), 30);
        IntPoly b = gen::monic(rng, rng.uniform(1, 8), 30);
        EXPECT_FALSE(irreducible_over_Z(a * b)) << to_string(a) << " * " << to_string(b);
    }
}

TEST(Irreducible, NearlyColliding)
{
    // Roots 1/2 apart in a cluster: x^2 - 1000001 has roots ~ +-1000.0005.
    EXPECT_TRUE(irreducible_over_Z(IntPoly{-1000001, 0, 1}));
    // Mignotte-like x^8 - 2(50x - 1)^2 has two very close real roots; Eisenstein at 2 makes it irreducible.
    IntPoly m = IntPoly::monomial(8) - Integer(2) * IntPoly{-1, 50}.pow(2);
    EXPECT_TRUE(irreducible_over_Z(m));
}

// Oracle sweep: every monic polynomial of degree n <= 6 with coefficients in [-4, 4].
class IrreducibleOracle : public ::testing::TestWithParam<int> {};

TEST_P(IrreducibleOracle, AgreesWithFactorEnumeration)
{
    const int n = GetParam();
    const long h = 4;
    auto red = oracle::reducible_table(n, h, 10);
    std::size_t mismatches = 0;
    for (std::size_t idx = 0; idx < red.size(); ++idx) {
        std::size_t t = idx;
        std::vector<long> low(n);
        for (int i = 0; i < n; ++i) {
            low[i] = static_cast<long>(t % (2 * h + 1)) - h;
            t /= (2 * h + 1);
        }
        IntPoly p = monic_from_low(low);
        if (irreducible_over_Z(p) == red[idx]) {
            ++mismatches;
            ADD_FAILURE() << "disagreement on " << to_string(p);
            if (mismatches > 10)
                return;
        }
    }
    EXPECT_EQ(mismatches, 0u);
}

INSTANTIATE_TEST_SUITE_P(Degrees, IrreducibleOracle, ::testing::Range(2, 7));

TEST(RootsOfUnity, Examples)
{
    EXPECT_EQ(roots_of_unity_factor(IntPoly{-1, 1}.pow(2) * IntPoly{1, -3, 1}), IntPoly({-1, 1}).pow(2));
    EXPECT_EQ(roots_of_unity_factor(IntPoly{1, -3, 1}), IntPoly({1}));
    EXPECT_EQ(roots_of_unity_factor(IntPoly{1, 1, 1}), IntPoly({1, 1, 1}));
}

TEST(RootsOfUnity, CyclotomicDegreesAndProducts)
{
    // prod_{d | n} Phi_d = x^n - 1
    for (unsigned n = 1; n <= 40; ++n) {
        IntPoly prod{1};
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0)
                prod = prod * cyclotomic(d);
        EXPECT_EQ(prod, IntPoly::monomial(n) - IntPoly{1});
    }
    EXPECT_EQ(cyclotomic(12), IntPoly({1, 0, -1, 0, 1}));
}

TEST(RootsOfUnity, FactorMatchesCircleRootsOfFiniteOrder)
{
    gen::Rng rng(19);
    for (int t = 0; t < 100; ++t) {
        IntPoly cyc{1};
        for (int k = rng.uniform(0, 3); k > 0; --k)
            cyc = cyc * cyclotomic(static_cast<unsigned>(rng.uniform(1, 12)));
        IntPoly rest = gen::monic(rng, rng.uniform(1, 5), 8);
        IntPoly p = cyc * rest;
        IntPoly u = roots_of_unity_factor(p);
        EXPECT_TRUE(divides(cyc, u)) << to_string(p);
        IntPoly co = exact_quotient(p, u);
        // The cofactor retains no root of unity.
        EXPECT_EQ(roots_of_unity_factor(co), IntPoly({1}));
        // Every root of u lies on the unit circle.
        for (const auto& r : isolate_roots(u, Rational(1, 1 << 20)))
            EXPECT_EQ(r.on_unit_circle, Tri::yes);
    }
}
