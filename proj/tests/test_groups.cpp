#include "cocompact/errors.hpp"
#include "cocompact/groups.hpp"
#include "cocompact/salem.hpp"
#include "gen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

using namespace cocompact;

namespace {

const IntPoly kGolden{1, -3, 1};
const IntPoly kSextic{1, 0, -1, -1, -1, 0, 1};
const IntPoly kQuartic = f4_poly({4, 3});

GammaElem random_gamma(gen::Rng& rng, std::size_t n, long h, long nmax)
{
    GammaElem g;
    g.z = Rational(rng.uniform(-h, h), rng.uniform(1, 4));
    for (std::size_t i = 0; i < n; ++i)
        g.v.emplace_back(rng.uniform(-h, h));
    g.n = rng.uniform(-nmax, nmax);
    return g;
}

Osc1Point random_point(gen::Rng& rng, std::size_t n)
{
    std::uniform_real_distribution<double> u(-2, 2);
    Osc1Point p;
    p.z = u(rng.engine());
    for (std::size_t i = 0; i < n; ++i)
        p.a.push_back(u(rng.engine()));
    p.t = u(rng.engine());
    return p;
}

Rational small_rat(gen::Rng& rng, long h = 6, long d = 6) { return Rational(rng.uniform(-h, h), rng.uniform(1, d)); }

// a = 0 elements may carry any rational tau; others get integral tau.
DqElement random_dq(gen::Rng& rng, const DqParams& p)
{
    DqElement g = dq_identity(p);
    g.zeta = {small_rat(rng), small_rat(rng)};
    if (p.family == Family::D)
        g.s = small_rat(rng);
    if (rng.coin()) {
        for (auto& x : g.a)
            x = small_rat(rng);
        g.tau = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
    } else {
        g.tau = {small_rat(rng), small_rat(rng)};
    }
    return g;
}

DqPoint random_dq_point(gen::Rng& rng, const DqParams& p)
{
    std::uniform_real_distribution<double> u(-2, 2);
    DqPoint g;
    g.zeta = {u(rng.engine()), u(rng.engine())};
    for (int i = 0; i < 2 * p.q(); ++i)
        g.a.push_back(u(rng.engine()));
    if (p.family == Family::D)
        g.s = u(rng.engine());
    g.tau = {u(rng.engine()), u(rng.engine())};
    return g;
}

MuSpecT2 sigma_triple(Family fam)
{
    MuSpecT2 m;
    m.family = fam;
    auto r = [](long v) { return SymbolicReal::rational(Rational(v)); };
    m.mu = {{r(1), r(0)}, {r(0), r(1)}, {r(1), r(1)}};
    return m;
}

IntMatrix triple_coords() { return IntMatrix{{1, 0}, {0, 1}, {1, 1}}; }

} // namespace

TEST(Osc1, AbstractIdentityAndMismatch)
{
    auto lat = build_lattice_T1(kGolden, 1);
    const GammaA& g = *lat.gamma;
    gen::Rng rng(3);
    auto x = random_gamma(rng, g.dim(), 5, 3);
    EXPECT_EQ(osc1_mul(g, g.identity(), x), x);
    EXPECT_EQ(osc1_mul(g, x, g.identity()), x);
    GammaElem bad = x;
    bad.v.pop_back();
    EXPECT_THROW(osc1_mul(g, x, bad), ModelMismatch);
}

TEST(Osc1, LatticeT1Golden)
{
    auto lat = build_lattice_T1(kGolden, 1);
    EXPECT_EQ(lat.generators.size(), 6u);
    for (const auto& gen : lat.generators)
        EXPECT_TRUE(lat.contains(gen));
    auto rep = closure_check(lat, 2);
    EXPECT_EQ(rep.violations, 0);
    EXPECT_EQ(rep.words, 12 + 144);
    // t e_i t^{-1} = A e_i
    const GammaA& g = *lat.gamma;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        auto c = g.mul(g.mul(g.shift(), g.basis_vector(i)), g.inverse(g.shift()));
        GammaElem want = g.identity();
        want.v = g.base().A.apply(g.basis_vector(i).v);
        EXPECT_EQ(c, want);
        EXPECT_TRUE(lat.contains(c));
    }
}

TEST(Osc1, CompatiblePairPassesLKO)
{
    for (auto [f, q] : {std::pair{kGolden, 1}, {kGolden, 2}, {kQuartic, 1}, {kSextic, 2}, {kSextic, 3}}) {
        auto sp = osc1_compatible_pair(f, q);
        int qbar = f.degree() / 2 - 1;
        auto rep = verify_LKO(sp, f * IntPoly{-1, 1}.pow(static_cast<unsigned>(2 * (q - qbar))));
        EXPECT_TRUE(rep.ok()) << to_string(f) << " q=" << q;
    }
}

TEST(Osc1, NumericEigenvalues)
{
    for (auto [f, q] : {std::pair{kGolden, 1}, {kGolden, 2}, {kQuartic, 1}, {kSextic, 2}}) {
        auto sp = osc1_compatible_pair(f, q);
        Osc1Numeric m(f, q, sp);
        auto chk = osc1_eigenvalue_check(m, f);
        EXPECT_TRUE(chk.ok) << chk.detail << " " << chk.max_distance;
        // e^{+-t'} and e^{+-i t' mu_j}
        auto ev = m.conjugation_eigenvalues();
        auto has = [&](std::complex<double> z) {
            for (auto e : ev)
                if (std::abs(e - z) < 1e-9)
                    return true;
            return false;
        };
        EXPECT_TRUE(has(std::exp(m.tprime())));
        EXPECT_TRUE(has(std::exp(-m.tprime())));
        for (double mu : m.mu()) {
            EXPECT_TRUE(has(std::polar(1.0, m.tprime() * mu)));
            EXPECT_TRUE(has(std::polar(1.0, -m.tprime() * mu)));
        }
        EXPECT_LT(m.intertwining_residual(), 1e-9);
        EXPECT_LT(m.form_residual(), 1e-9);
    }
}

TEST(Osc1, AbstractMatchesNumeric)
{
    for (auto [f, q] : {std::pair{kGolden, 1}, {kQuartic, 1}, {kSextic, 2}}) {
        auto lat = build_lattice_T1(f, q);
        Osc1Numeric m(f, q, lat.gamma->base());
        gen::Rng rng(17);
        for (int it = 0; it < 100; ++it) {
            auto a = random_gamma(rng, lat.gamma->dim(), 3, 2);
            auto b = random_gamma(rng, lat.gamma->dim(), 3, 2);
            auto lhs = m.embed(lat.gamma->mul(a, b));
            auto rhs = m.mul(m.embed(a), m.embed(b));
            double scale = 1 + std::abs(lhs.z);
            for (double x : lhs.a)
                scale = std::max(scale, std::abs(x));
            EXPECT_LT(distance(lhs, rhs), 1e-9 * scale);
        }
    }
}

TEST(Osc1, NumericGroupAxioms)
{
    Osc1Numeric m(kSextic, 2, osc1_compatible_pair(kSextic, 2));
    gen::Rng rng(5);
    double worst = 0;
    for (int it = 0; it < 1000; ++it) {
        auto a = random_point(rng, m.dim()), b = random_point(rng, m.dim()), c = random_point(rng, m.dim());
        worst = std::max(worst, distance(m.mul(m.mul(a, b), c), m.mul(a, m.mul(b, c))));
        worst = std::max(worst, distance(m.mul(a, m.inverse(a)), m.identity()));
        worst = std::max(worst, distance(m.mul(m.identity(), a), a));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(Osc1, ExactGroupAxioms)
{
    auto lat = build_lattice_T1(kQuartic, 1);
    const GammaA& g = *lat.gamma;
    gen::Rng rng(6);
    for (int it = 0; it < 1000; ++it) {
        auto a = random_gamma(rng, g.dim(), 4, 3), b = random_gamma(rng, g.dim(), 4, 3),
             c = random_gamma(rng, g.dim(), 4, 3);
        ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        ASSERT_EQ(g.mul(a, g.inverse(a)), g.identity());
    }
}

TEST(Dq, OmegaOnBasis)
{
    auto p = osc2_params(triple_coords());
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            auto e = [&](int i) {
                auto a = dq_identity(p).a;
                a[i] = 1;
                return a;
            };
            auto w = dq_omega(p, e(2 * k), e(2 * l + 1));
            if (k == l) {
                EXPECT_EQ(w[0], Rational(p.c(k, 0)));
                EXPECT_EQ(w[1], Rational(p.c(k, 1)));
            } else {
                EXPECT_EQ(w, (std::array<Rational, 2>{}));
            }
            EXPECT_EQ(dq_omega(p, e(2 * k), e(2 * l)), (std::array<Rational, 2>{}));
            EXPECT_EQ(dq_omega(p, e(2 * k + 1), e(2 * l + 1)), (std::array<Rational, 2>{}));
        }
}

TEST(Dq, Relations)
{
    auto p = dq_params(triple_coords());
    // l(T1) l(T2) l(T1)^-1 l(T2)^-1 = h((1/2, -1/2), 0, 2): composed by hand
    // from the l l relation, l(T1)l(T2) = h((1/6, -1/3), 0, 1) l(T1+T2) and
    // l(T2)l(T1) = h((-1/3, 1/6), 0, -1) l(T1+T2).
    auto l1 = dq_l(p, {1, 0}), l2 = dq_l(p, {0, 1});
    auto comm = dq_mul(p, dq_mul(p, dq_mul(p, l1, l2), dq_inverse(p, l1)), dq_inverse(p, l2));
    EXPECT_EQ(comm, dq_h(p, {Rational(1, 2), Rational(-1, 2)}, dq_identity(p).a, 2));
    // central z commutes with l(t)
    auto z = dq_h(p, {Rational(2, 7), Rational(-1, 3)}, dq_identity(p).a, 0);
    auto t = dq_l(p, {Rational(1, 3), Rational(5, 4)});
    EXPECT_EQ(dq_mul(p, dq_mul(p, t, z), dq_inverse(p, t)), z);
    // half of alpha(T1, T2) is one u_s
    EXPECT_EQ(dq_alpha(p, {1, 0}, {0, 1}) / 2, 1);
    // s t^flat lies in (lambda^2 / 2) Gamma^z
    for (long s = -3; s <= 3; ++s)
        for (long a = -2; a <= 2; ++a)
            for (long b = -2; b <= 2; ++b)
                for (auto x : dq_flat(p, s, {a, b}))
                    EXPECT_TRUE(is_integer(2 * x));
}

TEST(Dq, InexactPath)
{
    auto p = dq_params(triple_coords());
    auto g = dq_l(p, {Rational(1, 2), 0});
    auto a = dq_identity(p).a;
    a[0] = 1;
    EXPECT_THROW(dq_mul(p, g, dq_h(p, {}, a, 0)), InexactPath);
    EXPECT_NO_THROW(dq_mul(p, g, dq_h(p, {}, dq_identity(p).a, 1)));
    EXPECT_NO_THROW(dq_mul(p, dq_l(p, {1, -2}), dq_h(p, {}, a, 0)));
    DqElement bad = dq_identity(p);
    bad.a.pop_back();
    EXPECT_THROW(dq_mul(p, bad, g), ModelMismatch);
}

TEST(Dq, ExactGroupAxioms)
{
    for (auto p : {dq_params(triple_coords()), d0_params(), osc2_params(triple_coords()),
                   dq_params(IntMatrix{{2, -1}, {0, 3}})}) {
        gen::Rng rng(11);
        for (int it = 0; it < 1000; ++it) {
            auto a = random_dq(rng, p), b = random_dq(rng, p), c = random_dq(rng, p);
            // Keep every rotation exact: a left factor with fractional tau
            // multiplies only elements without an a-component.
            auto fix = [&](DqElement& x) {
                if (!rotation_trivial(p, x.tau))
                    x.tau = {floor(x.tau[0]), floor(x.tau[1])};
            };
            fix(a);
            fix(b);
            ASSERT_EQ(dq_mul(p, dq_mul(p, a, b), c), dq_mul(p, a, dq_mul(p, b, c)));
            ASSERT_EQ(dq_mul(p, a, dq_inverse(p, a)), dq_identity(p));
            ASSERT_EQ(dq_mul(p, dq_inverse(p, a), a), dq_identity(p));
            ASSERT_EQ(dq_mul(p, dq_identity(p), a), a);
        }
    }
}

TEST(Dq, FractionalTauAssociativity)
{
    // With a = 0 throughout, the three relations combine without rotations.
    auto p = dq_params(IntMatrix(0, 2));
    gen::Rng rng(12);
    for (int it = 0; it < 1000; ++it) {
        auto mk = [&] { return DqElement{{small_rat(rng), small_rat(rng)}, {}, small_rat(rng), {small_rat(rng), small_rat(rng)}}; };
        auto a = mk(), b = mk(), c = mk();
        ASSERT_EQ(dq_mul(p, dq_mul(p, a, b), c), dq_mul(p, a, dq_mul(p, b, c)));
    }
}

TEST(Dq, NumericAxiomsAndAgreement)
{
    for (auto p : {dq_params(triple_coords()), osc2_params(triple_coords()), dq_params(IntMatrix{{1, 2}})}) {
        gen::Rng rng(13);
        double worst = 0;
        for (int it = 0; it < 1000; ++it) {
            auto a = random_dq_point(rng, p), b = random_dq_point(rng, p), c = random_dq_point(rng, p);
            worst = std::max(worst, distance(dq_mul(p, dq_mul(p, a, b), c), dq_mul(p, a, dq_mul(p, b, c))));
            worst = std::max(worst, distance(dq_mul(p, a, dq_inverse(p, a)), to_point(dq_identity(p))));
        }
        EXPECT_LT(worst, 1e-9);
        for (int it = 0; it < 200; ++it) {
            auto a = random_dq(rng, p), b = random_dq(rng, p);
            if (!rotation_trivial(p, a.tau))
                a.tau = {floor(a.tau[0]), floor(a.tau[1])};
            EXPECT_LT(distance(to_point(dq_mul(p, a, b)), dq_mul(p, to_point(a), to_point(b))), 1e-9);
        }
    }
}

TEST(Dq, Osc2RejectsS)
{
    auto p = osc2_params(triple_coords());
    auto g = dq_h(p, {}, dq_identity(p).a, 0);
    auto bad = g;
    bad.s = 1;
    EXPECT_THROW(osc2_mul(p, g, bad), ModelMismatch);
    EXPECT_THROW(osc2_mul(dq_params(triple_coords()), g, g), ModelMismatch);
}

TEST(Bch, Examples)
{
    auto r = bch_crosscheck_Ell({1, 0}, {0, 1});
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.bch.s, 1);
    EXPECT_EQ(r.bch.zeta, (std::array<Rational, 2>{Rational(1, 6), Rational(-1, 3)}));

    std::array<Rational, 2> t{Rational(2, 3), Rational(-5, 7)};
    auto same = bch_crosscheck_Ell(t, t);
    EXPECT_TRUE(same.equal);
    EXPECT_EQ(same.closed, dq_l(dq_params(IntMatrix(0, 2)), {2 * t[0], 2 * t[1]}));

    auto inv = bch_crosscheck_Ell({1, 0}, {-1, 0});
    EXPECT_TRUE(inv.equal);
    EXPECT_EQ(inv.closed, dq_identity(dq_params(IntMatrix(0, 2))));
}

TEST(Bch, RationalGrid)
{
    std::vector<std::array<Rational, 2>> ts;
    for (int i = 0; i < 20; ++i)
        ts.push_back({Rational(i - 9, 4), Rational((7 * i) % 13 - 6, 3)});
    for (auto p : {dq_params(IntMatrix(0, 2)), d0_params()})
        for (const auto& t : ts)
            for (const auto& u : ts)
                ASSERT_TRUE(bch_crosscheck_Ell(t, u, p).equal);
}

TEST(Lattice, T2Osc2AndD)
{
    for (auto fam : {Family::Osc2, Family::D}) {
        auto lat = build_lattice_T2(sigma_triple(fam));
        EXPECT_EQ(lat.generators.size(), fam == Family::D ? 11u : 10u);
        for (const auto& g : lat.generators) {
            EXPECT_TRUE(lat.contains(g));
            EXPECT_TRUE(rotation_trivial(lat.params, std::get<DqElement>(g).tau));
        }
        auto rep = closure_check(lat, 2);
        EXPECT_EQ(rep.violations, 0);
    }
    // omega(Lambda, Lambda) in Gamma^z
    auto lat = build_lattice_T2(sigma_triple(Family::Osc2));
    for (std::size_t i = 2; i < 8; ++i)
        for (std::size_t j = 2; j < 8; ++j)
            for (const auto& x :
                 dq_omega(lat.params, std::get<DqElement>(lat.generators[i]).a, std::get<DqElement>(lat.generators[j]).a))
                EXPECT_TRUE(is_integer(x));
    // l(T1) l(T2) in h(Gamma^h) l(Gamma')
    auto d = build_lattice_T2(sigma_triple(Family::D));
    EXPECT_TRUE(d.contains(d.mul(dq_l(d.params, {1, 0}), dq_l(d.params, {0, 1}))));
}

TEST(Lattice, D0)
{
    auto lat = build_lattice_D0();
    EXPECT_EQ(lat.lattice, "1/6 Z^2 x 1/2 Z x Z^2");
    EXPECT_EQ(closure_check(lat, 3).violations, 0);
}

TEST(Lattice, NegativeControl)
{
    for (auto lat : {build_lattice_T1(kGolden, 1), build_lattice_T2(sigma_triple(Family::D)), build_lattice_D0()})
        EXPECT_THROW(closure_check(corrupt_generator(lat, 0), 1), ClosureViolation);
    // A corrupted non-central generator is caught as well.
    auto lat = build_lattice_T2(sigma_triple(Family::Osc2));
    EXPECT_THROW(closure_check(corrupt_generator(lat, 3), 2), ClosureViolation);
}

TEST(Lattice, T2Preconditions)
{
    MuSpecT2 m;
    m.family = Family::D;
    const int id = m.basis->add(fixed_symbol("pi", certified::pi(128)));
    // (1, 0), (0, 1), (pi, 1) generate a module of rank 3.
    auto pi = SymbolicReal::symbol(id);
    auto r = [](long v) { return SymbolicReal::rational(Rational(v)); };
    m.mu = {{r(1), r(0)}, {r(0), r(1)}, {pi, r(1)}};
    EXPECT_THROW(build_lattice_T2(m), NotInLattice);
}
