#include "cocompact/errors.hpp"
#include "cocompact/salem.hpp"
#include "cocompact/sympmat.hpp"

#include "gen.hpp"

#include <gtest/gtest.h>

using namespace cocompact;

namespace {

const IntPoly kGolden{1, -3, 1};
const IntPoly kSextic{1, 0, -1, -1, -1, 0, 1};
const IntPoly kQuartic = f4_poly({3, 3});

bool witness_holds(const Commensurability& c, const SympPair& a1, const SympPair& a2)
{
    auto s1 = split_identity_block(a1), s2 = split_identity_block(a2);
    RatMatrix b1 = to_rat(s1.core.pow(c.n1)), b2 = to_rat(s2.core.pow(c.n2));
    return det(c.S) != 0 && c.S * b1 == b2 * c.S &&
           c.S.transpose() * to_rat(s2.core_form) * c.S == c.m * to_rat(s1.core_form);
}

} // namespace

TEST(Companion, Examples)
{
    EXPECT_EQ(companion(kGolden), IntMatrix({{0, -1}, {1, 3}}));
    EXPECT_EQ(companion(IntPoly{-1, 1}), IntMatrix({{1}}));
    EXPECT_EQ(charpoly(companion(kQuartic)), kQuartic);
    EXPECT_THROW(companion(IntPoly{1, 2}), PreconditionViolated);
}

TEST(Companion, CharpolyOracle)
{
    gen::Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        IntPoly f = gen::monic(rng, rng.uniform(1, 8), 20);
        EXPECT_EQ(charpoly(companion(f)), f) << to_string(f);
    }
}

TEST(Matrix, Basics)
{
    IntMatrix a{{2, 1}, {7, 4}};
    EXPECT_EQ(det(a), 1);
    EXPECT_EQ(inverse_unimodular(a), IntMatrix({{4, -1}, {-7, 2}}));
    EXPECT_EQ(power(a, -2) * a.pow(2), IntMatrix::identity(2));
    EXPECT_EQ(det(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}), -3);
    EXPECT_EQ(rank(to_rat(IntMatrix{{1, 2}, {2, 4}})), 1u);
    EXPECT_EQ(hermite_normal_form(IntMatrix{{3, 0}, {2, 6}}), IntMatrix({{1, 12}, {0, 18}}));
    EXPECT_THROW(inverse_unimodular(IntMatrix{{2, 0}, {0, 1}}), PreconditionViolated);
    RatMatrix r = to_rat(IntMatrix{{1, 2}, {3, 4}});
    EXPECT_EQ(inverse(r) * r, RatMatrix::identity(2));
    EXPECT_TRUE(eval(charpoly(r), r).is_zero());
}

TEST(Matrix, DeterminantAgreesAcrossRings)
{
    gen::Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = rng.uniform(-4, 4);
        EXPECT_EQ(Rational(det(m)), det(to_rat(m)));
        IntPoly cp = charpoly(m);
        Integer sgn = n % 2 ? -1 : 1;
        EXPECT_EQ(cp.c[0], sgn * det(m));
    }
}

TEST(InvariantForm, Examples)
{
    IntMatrix std2{{0, 1}, {-1, 0}};
    EXPECT_EQ(invariant_form(companion(kGolden)), std2);
    EXPECT_EQ(invariant_form(IntMatrix::identity(2)), std2);
    RatMatrix d(2, 2);
    d(0, 0) = 2;
    d(1, 1) = Rational(1, 2);
    EXPECT_THROW(invariant_form(d), PreconditionViolated);
    // det A = 6 scales every 2x2 form by 6.
    EXPECT_THROW(invariant_form(IntMatrix{{2, 0}, {0, 3}}), NoForm);
    // Odd dimension: every antisymmetric form is degenerate.
    EXPECT_THROW(invariant_form(IntMatrix::identity(3)), NoForm);
    EXPECT_THROW(invariant_form(IntMatrix{{1, 0}, {0, 0}}), PreconditionViolated);
}

TEST(InvariantForm, SelfReciprocalTransfer)
{
    gen::Rng rng(17);
    std::vector<IntPoly> fs = {kGolden, kQuartic, kSextic, f4_poly({4, 3}),
                               IntPoly{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}};
    for (int t = 0; t < 40; ++t)
        fs.push_back(gen::palindromic(rng, rng.uniform(1, 4), 6));
    int checked = 0;
    for (const auto& f : fs) {
        IntMatrix a = companion(f);
        IntMatrix j;
        try {
            j = invariant_form(a);
        } catch (const NoForm&) {
            EXPECT_FALSE(classify_F_plus(f).member) << to_string(f);
            continue;
        } catch (const PreconditionViolated&) {
            continue; // singular: constant term 0 cannot occur, but keep the guard
        }
        ++checked;
        EXPECT_EQ(content(j), 1);
        EXPECT_EQ(j.transpose(), -j);
        RatMatrix jr = to_rat(j), ar = to_rat(a);
        EXPECT_EQ(jr * ar * inverse(jr), inverse(ar.transpose())) << to_string(f);
    }
    EXPECT_GE(checked, 5);
}

TEST(BuildA, Examples)
{
    auto sp = build_A_for_theorem1(kGolden, 1);
    EXPECT_EQ(sp.n(), 4u);
    EXPECT_EQ(charpoly(sp.A), kGolden * IntPoly({1, -2, 1}));
    EXPECT_TRUE(verify_LKO(sp, kGolden * IntPoly({1, -2, 1})).ok());

    auto q = build_A_for_theorem1(kQuartic, 1);
    EXPECT_EQ(q.A, companion(kQuartic));
    EXPECT_EQ(split_identity_block(q).identity, 0u);
    EXPECT_THROW(build_A_for_theorem1(kSextic, 1), PreconditionViolated);
    EXPECT_THROW(build_A_for_theorem1(IntPoly{1, -2, 1}, 1), PreconditionViolated);
}

TEST(BuildA, PowersPreserveForm)
{
    for (const auto& [f, q] : std::vector<std::pair<IntPoly, int>>{
             {kGolden, 1}, {kGolden, 3}, {kQuartic, 2}, {kSextic, 2}, {f4_poly({4, 3}), 1}}) {
        auto sp = build_A_for_theorem1(f, q);
        const int qbar = f.degree() / 2 - 1;
        auto rep = verify_LKO(sp, f * IntPoly{-1, 1}.pow(static_cast<unsigned>(2 * (q - qbar))));
        for (const auto& c : rep.checks)
            EXPECT_TRUE(c.ok) << c.name << ": " << c.detail;
        EXPECT_EQ(split_identity_block(sp).identity, static_cast<std::size_t>(2 * (q - qbar)));
        for (long k = -4; k <= 4; ++k) {
            IntMatrix ak = power(sp.A, k);
            EXPECT_EQ(ak.transpose() * sp.J * ak, sp.J) << k;
        }
    }
}

TEST(VerifyLKO, Failures)
{
    SympPair jordan{IntMatrix{{1, 1}, {0, 1}}, standard_symplectic(2)};
    auto r = verify_LKO(jordan);
    EXPECT_FALSE(r.find("semisimple")->ok);
    EXPECT_TRUE(r.find("preserves_form")->ok);

    SympPair index2{IntMatrix{{2, 0}, {0, 1}}, standard_symplectic(2)};
    r = verify_LKO(index2);
    EXPECT_FALSE(r.find("lattice_preserved")->ok);
    EXPECT_FALSE(r.ok());

    SympPair scaled{IntMatrix::identity(2), IntMatrix{{0, 2}, {-2, 0}}};
    EXPECT_FALSE(verify_LKO(scaled).find("form_primitive")->ok);
}

TEST(GammaA, Examples)
{
    GammaA g(build_A_for_theorem1(kGolden, 1));
    const auto e1 = g.basis_vector(0), e2 = g.basis_vector(1), t = g.shift();
    EXPECT_EQ(g.mul(g.identity(), e1), e1);
    EXPECT_EQ(g.mul(e1, g.identity()), e1);
    auto comm = g.mul(g.mul(g.mul(e1, e2), g.inverse(e1)), g.inverse(e2));
    GammaElem expect = g.identity();
    expect.z = Rational(g.omega(e1.v, e2.v));
    EXPECT_EQ(comm, expect);
    EXPECT_EQ(comm, g.centre());

    std::vector<Integer> v = {1, -2, 3, 5};
    GammaElem gv = g.identity();
    gv.v = v;
    auto conj = g.mul(g.mul(t, gv), g.inverse(t));
    GammaElem av = g.identity();
    av.v = g.base().A.apply(v);
    EXPECT_EQ(conj, av);
    EXPECT_THROW(GammaA(SympPair{IntMatrix{{2, 0}, {0, 1}}, standard_symplectic(2)}), PreconditionViolated);
}

TEST(GammaA, GroupAxiomsRandom)
{
    gen::Rng rng(99);
    for (const auto& sp : {build_A_for_theorem1(kGolden, 2), build_A_for_theorem1(kQuartic, 1)}) {
        GammaA g(sp);
        auto random = [&] {
            GammaElem x = g.identity();
            x.z = Rational(rng.uniform(-20, 20), 2);
            for (auto& c : x.v)
                c = rng.uniform(-5, 5);
            x.n = rng.uniform(-3, 3);
            return x;
        };
        for (int t = 0; t < 1000; ++t) {
            auto a = random(), b = random(), c = random();
            EXPECT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            EXPECT_EQ(g.mul(a, g.inverse(a)), g.identity());
            EXPECT_EQ(g.mul(g.inverse(a), a), g.identity());
        }
    }
}

TEST(Commensurable, Examples)
{
    auto a = build_A_for_theorem1(kGolden, 1);
    auto r = commensurable(a, a);
    ASSERT_EQ(r.kind, Commensurability::Proven);
    EXPECT_EQ(r.S, RatMatrix::identity(2));
    EXPECT_EQ(r.m, 1);
    EXPECT_EQ(r.n1, 1);
    EXPECT_EQ(r.n2, 1);

    SympPair sq = a;
    sq.A = a.A.pow(2);
    r = commensurable(a, sq);
    ASSERT_EQ(r.kind, Commensurability::Proven);
    EXPECT_EQ(r.n1, 2);
    EXPECT_EQ(r.n2, 1);
    EXPECT_EQ(r.S, RatMatrix::identity(2));

    // qbar = 0 core next to a qbar = 1 core, same total size.
    r = commensurable(a, build_A_for_theorem1(kQuartic, 1));
    ASSERT_EQ(r.kind, Commensurability::Disproven);
    bool mult = false;
    for (const auto& s : r.invariants)
        mult = mult || s.rfind("eigenvalue_1_multiplicity", 0) == 0;
    EXPECT_TRUE(mult);

    // Degree-4 core versus degree-6 core at q = 2.
    r = commensurable(build_A_for_theorem1(kQuartic, 2), build_A_for_theorem1(kSextic, 2));
    ASSERT_EQ(r.kind, Commensurability::Disproven);
    bool degree = false;
    for (const auto& s : r.invariants)
        degree = degree || s.find("degree mismatch") != std::string::npos;
    EXPECT_TRUE(degree);
}

TEST(Commensurable, ConjugateBaseAndSymmetry)
{
    auto a = build_A_for_theorem1(kQuartic, 1);
    // Change of lattice basis by a unimodular P.
    IntMatrix p{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, -1}, {0, 2, 0, 1}};
    ASSERT_EQ(det(p), 1);
    IntMatrix pi = inverse_unimodular(p);
    SympPair b{p * a.A * pi, pi.transpose() * a.J * pi};
    ASSERT_TRUE(verify_LKO(b).find("preserves_form")->ok);
    auto r = commensurable(a, b);
    ASSERT_EQ(r.kind, Commensurability::Proven);
    EXPECT_TRUE(witness_holds(r, a, b));

    std::vector<SympPair> set = {a, b, build_A_for_theorem1(kGolden, 1), build_A_for_theorem1(f4_poly({4, 3}), 1)};
    SympPair sq = a;
    sq.A = a.A.pow(2);
    set.push_back(sq);
    for (const auto& x : set)
        for (const auto& y : set) {
            auto f = commensurable(x, y), g = commensurable(y, x);
            if (f.kind == Commensurability::Unknown || g.kind == Commensurability::Unknown)
                continue;
            EXPECT_EQ(f.kind, g.kind);
            if (f.kind == Commensurability::Proven) {
                EXPECT_TRUE(witness_holds(f, x, y));
                EXPECT_TRUE(witness_holds(g, y, x));
                // Inverse witness for the reversed pair.
                Commensurability inv = f;
                inv.S = inverse(f.S);
                inv.m = 1 / f.m;
                std::swap(inv.n1, inv.n2);
                EXPECT_TRUE(witness_holds(inv, y, x));
            }
        }
}
