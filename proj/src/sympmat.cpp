#include "cocompact/sympmat.hpp"

#include "cocompact/errors.hpp"
#include "cocompact/salem.hpp"

#include <fmt/format.h>

#include <random>

namespace cocompact {

IntMatrix standard_symplectic(std::size_t n)
{
    if (n % 2 != 0)
        throw PreconditionViolated("symplectic form needs even size");
    IntMatrix j(n, n);
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        j(i, i + 1) = 1;
        j(i + 1, i) = -1;
    }
    return j;
}

namespace {

bool preserves(const IntMatrix& a, const IntMatrix& j) { return a.transpose() * j * a == j; }

bool antisymmetric(const IntMatrix& j)
{
    return j.square() && j.transpose() == -j;
}

// Scale a rational antisymmetric matrix to a primitive integer one with
// first nonzero upper entry positive.
IntMatrix primitive_form(const RatMatrix& m)
{
    Integer l = 1;
    for (const auto& v : m.data())
        l = bmp::lcm(l, Integer(bmp::denominator(v)));
    IntMatrix out = to_int(Rational(l) * m);
    Integer g = content(out);
    int s = 0;
    for (std::size_t i = 0; i < out.rows() && s == 0; ++i)
        for (std::size_t j = i + 1; j < out.cols() && s == 0; ++j)
            s = sign(out(i, j));
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j)
            out(i, j) = s * out(i, j) / g;
    return out;
}

} // namespace

IntMatrix invariant_form(const IntMatrix& a, std::uint64_t seed)
{
    if (!a.square())
        throw PreconditionViolated("invariant_form needs a square matrix");
    if (det(a) == 0)
        throw PreconditionViolated("invariant_form needs an invertible matrix");
    const std::size_t n = a.rows();
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            slots.emplace_back(i, j);
    if (slots.empty())
        throw NoForm("no antisymmetric forms in dimension " + std::to_string(n));
    // Column per unknown J_ij: upper entries of A^T E_ij A - E_ij.
    RatMatrix sys(slots.size(), slots.size());
    const IntMatrix at = a.transpose();
    auto unit = [&](std::size_t k) {
        IntMatrix e(n, n);
        e(slots[k].first, slots[k].second) = 1;
        e(slots[k].second, slots[k].first) = -1;
        return e;
    };
    for (std::size_t k = 0; k < slots.size(); ++k) {
        IntMatrix e = unit(k);
        IntMatrix d = at * e * a - e;
        for (std::size_t r = 0; r < slots.size(); ++r)
            sys(r, k) = Rational(d(slots[r].first, slots[r].second));
    }
    auto null = nullspace(sys);
    if (null.empty())
        throw NoForm("A preserves no nonzero antisymmetric form");
    auto assemble = [&](const std::vector<Rational>& coeffs) {
        RatMatrix j(n, n);
        for (std::size_t b = 0; b < null.size(); ++b) {
            if (coeffs[b] == 0)
                continue;
            for (std::size_t k = 0; k < slots.size(); ++k) {
                Rational v = coeffs[b] * null[b][k];
                j(slots[k].first, slots[k].second) += v;
                j(slots[k].second, slots[k].first) -= v;
            }
        }
        return j;
    };
    // Basis vectors, then their sum, then seeded random combinations.
    std::vector<std::vector<Rational>> trials;
    for (std::size_t b = 0; b < null.size(); ++b) {
        std::vector<Rational> c(null.size(), Rational(0));
        c[b] = 1;
        trials.push_back(c);
    }
    trials.emplace_back(null.size(), Rational(1));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coef(-(1L << 20), 1L << 20);
    for (int t = 0; t < 16; ++t) {
        std::vector<Rational> c;
        for (std::size_t b = 0; b < null.size(); ++b)
            c.emplace_back(coef(rng));
        trials.push_back(c);
    }
    for (const auto& c : trials) {
        RatMatrix j = assemble(c);
        if (det(j) != 0) {
            IntMatrix out = primitive_form(j);
            if (!preserves(a, out))
                throw InternalInconsistency("invariant form does not satisfy A^T J A = J");
            return out;
        }
    }
    // A single basis vector determines the determinant up to scaling, so the
    // search is exact there; otherwise every random combination was degenerate.
    throw NoForm(null.size() == 1 ? "the unique invariant form is degenerate"
                                  : "every sampled invariant form is degenerate");
}

IntMatrix invariant_form(const RatMatrix& a, std::uint64_t seed)
{
    if (!is_integral(a))
        throw PreconditionViolated("invariant_form needs an integer matrix");
    return invariant_form(to_int(a), seed);
}

SympPair build_A_for_theorem1(const IntPoly& f, int q)
{
    auto cls = classify_F_plus(f);
    if (!cls.member)
        throw PreconditionViolated(to_string(f) + " is not in F+");
    const int qbar = cls.k - 1;
    if (q < qbar)
        throw PreconditionViolated(fmt::format("q = {} is below {}", q, qbar));
    const std::size_t m = 2 * static_cast<std::size_t>(q - qbar);
    IntMatrix c = companion(f);
    IntMatrix jc;
    try {
        jc = invariant_form(c);
    } catch (const NoForm& e) {
        throw InternalInconsistency(std::string("companion of a Salem polynomial: ") + e.what());
    }
    SympPair sp;
    sp.A = m ? block_diag(IntMatrix::identity(m), c) : c;
    sp.J = m ? block_diag(standard_symplectic(m), jc) : jc;
    IntPoly expected = f * IntPoly{-1, 1}.pow(static_cast<unsigned>(m));
    if (charpoly(sp.A) != expected || !preserves(sp.A, sp.J))
        throw InternalInconsistency("theorem-1 matrix failed its own checks");
    return sp;
}

BlockSplit split_identity_block(const SympPair& sp)
{
    const std::size_t n = sp.n();
    std::size_t m = 0;
    // Largest even m with A = diag(I_m, *) and J = diag(*, *).
    for (std::size_t cand = 0; cand <= n; cand += 2) {
        bool ok = true;
        for (std::size_t i = 0; i < cand && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                ok = sp.A(i, j) == (i == j ? 1 : 0) && sp.A(j, i) == (i == j ? 1 : 0);
                if (j >= cand)
                    ok = ok && sp.J(i, j) == 0 && sp.J(j, i) == 0;
            }
        if (!ok)
            break;
        m = cand;
    }
    BlockSplit out;
    out.identity = m;
    out.core = IntMatrix(n - m, n - m);
    out.core_form = IntMatrix(n - m, n - m);
    for (std::size_t i = m; i < n; ++i)
        for (std::size_t j = m; j < n; ++j) {
            out.core(i - m, j - m) = sp.A(i, j);
            out.core_form(i - m, j - m) = sp.J(i, j);
        }
    return out;
}

bool LKOReport::ok() const
{
    for (const auto& c : checks)
        if (!c.ok)
            return false;
    return !checks.empty();
}

const LKOReport::Check* LKOReport::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

LKOReport verify_LKO(const SympPair& sp, const std::optional<IntPoly>& expected)
{
    LKOReport r;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        r.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    const bool shapes = sp.A.square() && sp.J.square() && sp.A.rows() == sp.J.rows() && sp.n() % 2 == 0;
    add("shape", shapes, fmt::format("{}x{} and {}x{}", sp.A.rows(), sp.A.cols(), sp.J.rows(), sp.J.cols()));
    if (!shapes)
        return r;
    Integer d = det(sp.A);
    add("lattice_preserved", d == 1 || d == -1, "det A = " + d.str());
    add("form_integral", antisymmetric(sp.J), "J integer; antisymmetric check");
    Integer dj = det(sp.J);
    add("form_nondegenerate", dj != 0, "det J = " + dj.str());
    add("form_primitive", content(sp.J) == 1, "content " + content(sp.J).str());
    add("preserves_form", preserves(sp.A, sp.J));
    RatPoly cp = charpoly(to_rat(sp.A));
    bool integral = true;
    for (const auto& c : cp.c)
        integral = integral && is_integer(c);
    add("charpoly_integral", integral, to_string(cp));
    IntPoly cpi = to_int(cp);
    // Semisimple over Q iff the squarefree part of the charpoly annihilates A.
    IntPoly sf = squarefree_part(cpi);
    add("semisimple", eval(to_rat(sf), to_rat(sp.A)).is_zero(), "squarefree part " + to_string(sf));
    if (expected)
        add("charpoly_expected", cpi == *expected, to_string(cpi) + " vs " + to_string(*expected));
    return r;
}

std::string to_string(const GammaElem& g)
{
    std::string v;
    for (std::size_t i = 0; i < g.v.size(); ++i)
        v += (i ? ", " : "") + g.v[i].str();
    return fmt::format("({}, [{}], {})", to_string(g.z), v, g.n.str());
}

GammaA::GammaA(SympPair base) : base_(std::move(base))
{
    auto rep = verify_LKO(base_);
    for (const char* name : {"shape", "lattice_preserved", "form_integral", "form_nondegenerate", "preserves_form"})
        if (auto c = rep.find(name); !c || !c->ok)
            throw PreconditionViolated(std::string("Gamma(A) base fails ") + name);
}

const IntMatrix& GammaA::power(long n) const
{
    auto it = powers_.find(n);
    if (it != powers_.end())
        return it->second;
    return powers_.emplace(n, cocompact::power(base_.A, n)).first->second;
}

GammaElem GammaA::identity() const
{
    return {Rational(0), std::vector<Integer>(dim(), Integer(0)), Integer(0)};
}

Integer GammaA::omega(const std::vector<Integer>& x, const std::vector<Integer>& y) const
{
    Integer s = 0;
    auto jy = base_.J.apply(y);
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * jy[i];
    return s;
}

GammaElem GammaA::mul(const GammaElem& a, const GammaElem& b) const
{
    if (a.v.size() != dim() || b.v.size() != dim())
        throw PreconditionViolated("Gamma(A) element of the wrong dimension");
    const auto& an = power(a.n.convert_to<long>());
    auto bv = an.apply(b.v);
    GammaElem out;
    out.z = a.z + b.z + Rational(omega(a.v, bv), 2);
    out.v = a.v;
    for (std::size_t i = 0; i < dim(); ++i)
        out.v[i] += bv[i];
    out.n = a.n + b.n;
    return out;
}

GammaElem GammaA::inverse(const GammaElem& a) const
{
    GammaElem out;
    out.z = -a.z;
    out.v = power(-a.n.convert_to<long>()).apply(a.v);
    for (auto& x : out.v)
        x = -x;
    out.n = -a.n;
    return out;
}

GammaElem GammaA::basis_vector(std::size_t i) const
{
    GammaElem g = identity();
    g.v.at(i) = 1;
    return g;
}

GammaElem GammaA::shift() const
{
    GammaElem g = identity();
    g.n = 1;
    return g;
}

GammaElem GammaA::centre() const
{
    GammaElem g = identity();
    g.z = 1;
    return g;
}

const char* to_string(Commensurability::Kind k)
{
    switch (k) {
    case Commensurability::Proven: return "proven";
    case Commensurability::Disproven: return "disproven";
    case Commensurability::Unknown: return "unknown";
    }
    return "?";
}

namespace {

int multiplicity_of_one(IntPoly p)
{
    int m = 0;
    const IntPoly lin{-1, 1};
    while (!p.is_zero() && p.degree() > 0 && eval(p, Rational(1)) == 0) {
        p = exact_quotient(p, lin);
        ++m;
    }
    return m;
}

// Basis of {S : S B1 = B2 S} as d x d matrices.
std::vector<RatMatrix> intertwiners(const IntMatrix& b1, const IntMatrix& b2)
{
    const std::size_t d = b1.rows();
    RatMatrix sys(d * d, d * d);
    // (S B1 - B2 S)_{ij} = sum_k S_ik B1_kj - B2_ik S_kj, unknown S_ab at a*d+b.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t row = i * d + j;
            for (std::size_t k = 0; k < d; ++k) {
                sys(row, i * d + k) += Rational(b1(k, j));
                sys(row, k * d + j) -= Rational(b2(i, k));
            }
        }
    std::vector<RatMatrix> out;
    for (const auto& v : nullspace(sys)) {
        RatMatrix s(d, d);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                s(a, b) = v[a * d + b];
        out.push_back(std::move(s));
    }
    return out;
}

// m with S^T J2 S = m J1, if any.
std::optional<Rational> similitude(const RatMatrix& s, const IntMatrix& j1, const IntMatrix& j2)
{
    if (det(s) == 0)
        return std::nullopt;
    RatMatrix lhs = s.transpose() * to_rat(j2) * s;
    std::optional<Rational> m;
    for (std::size_t i = 0; i < j1.rows(); ++i)
        for (std::size_t j = 0; j < j1.cols(); ++j) {
            if (j1(i, j) == 0) {
                if (lhs(i, j) != 0)
                    return std::nullopt;
                continue;
            }
            Rational r = lhs(i, j) / Rational(j1(i, j));
            if (m && *m != r)
                return std::nullopt;
            m = r;
        }
    if (!m || *m == 0)
        return std::nullopt;
    return m;
}

inline constexpr long kMaxCombinations = 200000;

} // namespace

Commensurability commensurable(const SympPair& a1, const SympPair& a2, int power_bound, int search_bound)
{
    Commensurability out;
    if (a1.n() != a2.n())
        out.invariants.push_back(fmt::format("hirsch_length: {} vs {}", a1.n() + 2, a2.n() + 2));
    BlockSplit s1 = split_identity_block(a1), s2 = split_identity_block(a2);
    IntPoly c1 = charpoly(s1.core), c2 = charpoly(s2.core);
    int m1 = multiplicity_of_one(charpoly(a1.A)), m2 = multiplicity_of_one(charpoly(a2.A));
    if (m1 != m2)
        out.invariants.push_back(fmt::format("eigenvalue_1_multiplicity: {} vs {}", m1, m2));
    if (classify_F_plus(c1).member && classify_F_plus(c2).member) {
        auto eq = salem_equivalent(c1, c2);
        if (eq.kind == Equivalence::NotEquivalent)
            out.invariants.push_back("salem_equivalent: " + eq.reason);
    } else {
        out.detail = "core blocks are not both in F+; Salem invariant skipped";
    }
    if (!out.invariants.empty()) {
        out.kind = Commensurability::Disproven;
        return out;
    }
    if (s1.core.rows() != s2.core.rows()) {
        out.detail = "core blocks of different size";
        return out;
    }
    long examined = 0;
    for (int sum = 2; sum <= 2 * power_bound; ++sum)
        for (int n1 = std::max(1, sum - power_bound); n1 <= std::min(power_bound, sum - 1); ++n1) {
            const int n2 = sum - n1;
            IntMatrix b1 = s1.core.pow(n1), b2 = s2.core.pow(n2);
            if (charpoly(b1) != charpoly(b2))
                continue;
            auto basis = intertwiners(b1, b2);
            if (basis.empty())
                continue;
            auto accept = [&](const RatMatrix& s) {
                if (auto m = similitude(s, s1.core_form, s2.core_form)) {
                    out.kind = Commensurability::Proven;
                    out.S = s;
                    out.m = *m;
                    out.n1 = n1;
                    out.n2 = n2;
                    return true;
                }
                return false;
            };
            const std::size_t d = b1.rows();
            if (b1 == b2 && accept(RatMatrix::identity(d)))
                return out;
            // Coefficient tuples by increasing height.
            const std::size_t k = basis.size();
            for (long h = 1; h <= search_bound; ++h) {
                std::vector<long> c(k, -h);
                while (true) {
                    bool hit = false;
                    for (long v : c)
                        hit = hit || std::abs(v) == h;
                    if (hit) {
                        if (++examined > kMaxCombinations) {
                            out.detail = "similitude search budget exhausted";
                            return out;
                        }
                        RatMatrix s(d, d);
                        for (std::size_t b = 0; b < k; ++b)
                            if (c[b] != 0)
                                s = s + Rational(c[b]) * basis[b];
                        if (accept(s))
                            return out;
                    }
                    std::size_t i = k;
                    while (i > 0 && c[i - 1] == h)
                        c[--i] = -h;
                    if (i == 0)
                        break;
                    ++c[i - 1];
                }
            }
        }
    if (out.detail.empty())
        out.detail = fmt::format("no similitude with n1, n2 <= {} and coefficients <= {}", power_bound, search_bound);
    return out;
}

} // namespace cocompact
