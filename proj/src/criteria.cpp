#include "cocompact/criteria.hpp"

#include "cocompact/errors.hpp"
#include "cocompact/matrix.hpp"
#include "cocompact/salem.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace cocompact {

const char* to_string(Family f)
{
    switch (f) {
    case Family::Osc1: return "Osc1";
    case Family::Osc2: return "Osc2";
    case Family::D: return "D";
    }
    return "?";
}

const char* to_string(MuCheck::Kind k)
{
    switch (k) {
    case MuCheck::Member: return "member";
    case MuCheck::NonMember: return "non_member";
    case MuCheck::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(T1Decision::Kind k)
{
    return k == T1Decision::LatticeExists ? "lattice_exists" : "no_witness_found";
}

const char* to_string(T2Decision::Kind k)
{
    switch (k) {
    case T2Decision::LatticeExists: return "lattice_exists";
    case T2Decision::No: return "no";
    case T2Decision::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(Indecomposability::Kind k)
{
    switch (k) {
    case Indecomposability::OK: return "ok";
    case Indecomposability::Violation: return "violation";
    case Indecomposability::Undetermined: return "undetermined";
    }
    return "?";
}

namespace {

// Sign of a nonzero entry; throws when it cannot be certified.
int entry_sign(const SymbolicReal& x, const SymbolBasis& basis)
{
    if (x.is_zero())
        throw ZeroEntry("mu entry is zero");
    auto s = certified_sign(x, basis);
    if (!s)
        throw IncomparableEntries("sign of " + to_string(x, basis) + " undetermined after 256 bits");
    return *s;
}

} // namespace

MuSpecT1 normalize_mu_T1(const MuSpecT1& in)
{
    MuSpecT1 out = in;
    const SymbolBasis& b = *in.basis;
    for (auto& x : out.mu)
        if (entry_sign(x, b) < 0)
            x = -x;
    std::stable_sort(out.mu.begin(), out.mu.end(),
                     [&](const SymbolicReal& x, const SymbolicReal& y) { return compare(x, y, b) < 0; });
    return out;
}

MuSpecT1 synthesize_mu_T1(const IntPoly& f, int q, const std::vector<int>& signs, const std::vector<long>& ks)
{
    auto cls = classify_F_plus(f);
    if (!cls.member)
        throw PreconditionViolated(to_string(f) + " is not in F+");
    const int qbar = cls.k - 1;
    if (q < qbar)
        throw PreconditionViolated(fmt::format("q = {} is below {}", q, qbar));
    if (static_cast<int>(signs.size()) != qbar || static_cast<int>(ks.size()) != q)
        throw PreconditionViolated(fmt::format("expected {} signs and {} offsets", qbar, q));
    MuSpecT1 mu;
    std::vector<int> angle(qbar);
    for (int j = 0; j < qbar; ++j)
        angle[j] = mu.basis->add(salem_angle_symbol(f, j));
    const int period = mu.basis->add(salem_period_symbol(f));
    for (int j = 0; j < q; ++j) {
        SymbolicReal x = SymbolicReal::symbol(period, Rational(ks[j]));
        if (j < qbar) {
            if (signs[j] != 1 && signs[j] != -1)
                throw PreconditionViolated("signs must be +-1");
            x = x + SymbolicReal::symbol(angle[j], Rational(signs[j]));
        }
        if (x.is_zero())
            throw ZeroEntry(fmt::format("entry {} is 2 pi * 0 / ln r", j + 1));
        mu.mu.push_back(std::move(x));
    }
    return mu;
}

namespace {

enum class Edge { No, Beyond, Maybe, Yes };

struct EdgeInfo {
    Edge e = Edge::No;
    MuAssignment a;
};

EdgeInfo better(const EdgeInfo& x, const EdgeInfo& y) { return y.e > x.e ? y : x; }

// Kuhn matching of entries to slots over edges accepted by `ok`.
template <class Ok>
std::optional<std::vector<int>> perfect_matching(int n, Ok ok)
{
    std::vector<int> slot_of(n, -1), entry_of(n, -1);
    std::function<bool(int, std::vector<bool>&)> augment = [&](int j, std::vector<bool>& seen) {
        for (int s = 0; s < n; ++s) {
            if (seen[s] || !ok(j, s))
                continue;
            seen[s] = true;
            if (entry_of[s] < 0 || augment(entry_of[s], seen)) {
                entry_of[s] = j;
                slot_of[j] = s;
                return true;
            }
        }
        return false;
    };
    for (int j = 0; j < n; ++j) {
        std::vector<bool> seen(n, false);
        if (!augment(j, seen))
            return std::nullopt;
    }
    return slot_of;
}

// Entry written over symbols tagged with f (and 1), decided exactly.
struct TaggedEntry {
    bool applicable = true;
    Rational unit = 0, period = 0;
    std::map<int, Rational> angle;
};

TaggedEntry tag_entry(const SymbolicReal& x, const SymbolBasis& b, const IntPoly& f)
{
    TaggedEntry t;
    for (const auto& [id, c] : x.coeffs) {
        if (id == 0) {
            t.unit += c;
            continue;
        }
        const Symbol& s = b[id];
        if (!s.salem || s.salem->f != f || !s.independent) {
            t.applicable = false;
            return t;
        }
        if (s.salem->kind == SalemTag::TwoPiOverLog)
            t.period += c;
        else
            t.angle[s.salem->j] += c;
    }
    // Purely rational entries are certified by intervals, without assumptions.
    if (x.as_rational())
        t.applicable = false;
    for (auto it = t.angle.begin(); it != t.angle.end();)
        it = it->second == 0 ? t.angle.erase(it) : std::next(it);
    return t;
}

EdgeInfo exact_edge(const TaggedEntry& t, int slot, int bound)
{
    EdgeInfo out;
    if (t.unit != 0 || !is_integer(t.period))
        return out;
    Integer k = bmp::numerator(t.period);
    if (slot < 0) {
        if (!t.angle.empty() || k == 0)
            return out;
        out.a = {-1, 1, k};
    } else {
        if (t.angle.size() != 1 || t.angle.begin()->first != slot)
            return out;
        const Rational& c = t.angle.begin()->second;
        if (c != 1 && c != -1)
            return out;
        out.a = {slot, c > 0 ? 1 : -1, k};
    }
    out.e = abs(Rational(k)) <= bound ? Edge::Yes : Edge::Beyond;
    return out;
}

// Integers in y, excluding 0 when requested, classified against the bound.
EdgeInfo numeric_edge(const Interval& y, bool exclude_zero, int bound, MuAssignment a)
{
    EdgeInfo out;
    out.a = a;
    Integer lo = ceil(y.lo), hi = floor(y.hi);
    if (lo > hi || (exclude_zero && lo == 0 && hi == 0))
        return out;
    const Integer b = bound;
    bool within = false;
    for (Integer k = std::max(lo, Integer(-b)); k <= std::min(hi, b); ++k)
        if (!(exclude_zero && k == 0)) {
            within = true;
            break;
        }
    out.e = within ? Edge::Maybe : Edge::Beyond;
    return out;
}

} // namespace

MuCheck check_mu_T1(const MuSpecT1& mu, const IntPoly& f, int bound)
{
    auto cls = classify_F_plus(f);
    if (!cls.member)
        throw PreconditionViolated(to_string(f) + " is not in F+");
    const int qbar = cls.k - 1;
    const int q = mu.q();
    const SymbolBasis& b = *mu.basis;
    MuCheck out;
    if (q < qbar) {
        out.kind = MuCheck::NonMember;
        out.exact = true;
        out.detail = fmt::format("q = {} cannot carry {} unit-circle pairs", q, qbar);
        return out;
    }
    for (const auto& x : mu.mu)
        if (x.is_zero()) {
            out.kind = MuCheck::NonMember;
            out.exact = true;
            out.detail = "zero entry";
            return out;
        }
    // Slots 0..qbar-1 are the angles, the rest the eigenvalue 1.
    auto slot_id = [&](int s) { return s < qbar ? s : -1; };

    std::vector<TaggedEntry> tagged;
    bool all_exact = true;
    for (const auto& x : mu.mu) {
        tagged.push_back(tag_entry(x, b, f));
        all_exact = all_exact && tagged.back().applicable;
    }
    std::vector<std::vector<EdgeInfo>> edges(q, std::vector<EdgeInfo>(q));
    bool used_exact = false, used_numeric = false;
    for (int pass = 0; pass < static_cast<int>(std::size(kRefineBits)); ++pass) {
        const int bits = kRefineBits[pass];
        out.bits = bits;
        bool any_maybe = false;
        std::optional<SalemData> data;
        Interval L, two_pi;
        for (int j = 0; j < q; ++j) {
            if (tagged[j].applicable) {
                if (pass == 0)
                    for (int s = 0; s < q; ++s)
                        edges[j][s] = exact_edge(tagged[j], slot_id(s), bound);
                used_exact = true;
                continue;
            }
            used_numeric = true;
            if (!data) {
                const Rational tol = pow2(-bits - 8);
                data = salem_data(f, tol);
                L = certified::log(data->r.re, bits + 8);
                two_pi = Rational(2) * certified::pi(bits + 8);
            }
            Interval vl = evaluate(mu.mu[j], b, bits) * L;
            for (int s = 0; s < q; ++s) {
                const int sid = slot_id(s);
                if (sid < 0) {
                    edges[j][s] = numeric_edge(vl / two_pi, true, bound, {-1, 1, 0});
                } else {
                    const Interval& ang = data->unit_pairs[sid].s;
                    edges[j][s] = better(numeric_edge((vl - ang) / two_pi, false, bound, {sid, 1, 0}),
                                         numeric_edge((vl + ang) / two_pi, false, bound, {sid, -1, 0}));
                }
                any_maybe = any_maybe || edges[j][s].e == Edge::Maybe;
            }
        }
        if (auto m = perfect_matching(q, [&](int j, int s) { return edges[j][s].e == Edge::Yes; })) {
            out.kind = MuCheck::Member;
            for (int j = 0; j < q; ++j)
                out.witness.push_back(edges[j][(*m)[j]].a);
            break;
        }
        if (!perfect_matching(q, [&](int j, int s) { return edges[j][s].e != Edge::No; })) {
            out.kind = MuCheck::NonMember;
            break;
        }
        if (!any_maybe) {
            out.kind = MuCheck::Unknown;
            out.detail = fmt::format("a matching needs offsets beyond |k| <= {}", bound);
            break;
        }
        out.kind = MuCheck::Unknown;
        out.detail = "numeric enclosures still admit an assignment after 256 bits";
    }
    out.exact = all_exact;
    if (used_exact)
        out.assumptions.push_back("1, s_j/ln r and 2pi/ln r are Q-linearly independent");
    if (used_numeric)
        out.assumptions.push_back(fmt::format("interval evaluation at {} bits", out.bits));
    return out;
}

namespace {

IntPoly palindromic(const std::vector<long>& c)
{
    const int k = static_cast<int>(c.size());
    std::vector<Integer> coeffs(2 * k + 1);
    coeffs[0] = coeffs[2 * k] = 1;
    for (int i = 1; i <= k; ++i)
        coeffs[i] = coeffs[2 * k - i] = c[i - 1];
    return IntPoly(coeffs);
}

// Tuples in [-h, h]^k with max |c_i| = h, in lexicographic order.
template <class Visit>
bool for_each_of_height(int k, long h, Visit visit)
{
    std::vector<long> c(k, -h);
    while (true) {
        bool hit = false;
        for (long v : c)
            hit = hit || std::abs(v) == h;
        if (hit && visit(c))
            return true;
        int i = k - 1;
        while (i >= 0 && c[i] == h)
            c[i--] = -h;
        if (i < 0)
            return false;
        ++c[i];
    }
}

} // namespace

T1Decision decide_T1(const MuSpecT1& mu, int coeff_height, int degree_bound)
{
    T1Decision out;
    const int q = mu.q();
    if (q == 0) {
        out.kind = T1Decision::LatticeExists;
        out.detail = "Osc_{1,0} admits a lattice";
        return out;
    }
    degree_bound = std::min(degree_bound, kMaxDegree);
    for (int deg = 2; deg <= degree_bound; deg += 2) {
        const int k = deg / 2;
        if (k - 1 > q)
            break;
        for (long h = 0; h <= coeff_height; ++h) {
            bool found = for_each_of_height(k, h, [&](const std::vector<long>& c) {
                ++out.candidates;
                if (k == 1 && c[0] > -3)
                    return false;
                IntPoly f = palindromic(c);
                if (k >= 2 && count_real_roots(trace_poly(f), Rational(-2), Rational(2)) != k - 1)
                    return false;
                if (!classify_F_plus(f).member)
                    return false;
                ++out.members;
                MuCheck chk = check_mu_T1(mu, f);
                if (chk.kind == MuCheck::Unknown)
                    ++out.unknown;
                if (chk.kind != MuCheck::Member)
                    return false;
                out.kind = T1Decision::LatticeExists;
                out.f = f;
                out.check = chk;
                return true;
            });
            if (found) {
                out.assumptions = out.check.assumptions;
                return out;
            }
        }
    }
    out.detail = fmt::format("no witness with degree <= {} and height <= {} ({} candidates, {} in F+, {} unknown)",
                             degree_bound, coeff_height, out.candidates, out.members, out.unknown);
    out.assumptions.push_back("bounded search; not a proof of nonexistence");
    return out;
}

namespace {

bool nonzero_pair(const MuPair& m, const SymbolBasis& b, bool& undetermined)
{
    if (m.x.is_zero() && m.y.is_zero())
        return false;
    for (const auto* c : {&m.x, &m.y})
        if (!c->is_zero() && (exact_zero_test(*c, b) || certified_sign(*c, b).value_or(0) != 0))
            return true;
    undetermined = true;
    return true;
}

SymbolicProduct det2(const MuPair& a, const MuPair& b)
{
    return multiply(a.x, b.y) - multiply(b.x, a.y);
}

} // namespace

Indecomposability check_indecomposable(const MuSpecT1& mu)
{
    Indecomposability out;
    for (int j = 0; j < mu.q(); ++j) {
        const auto& x = mu.mu[j];
        if (x.is_zero())
            return {Indecomposability::Violation, fmt::format("mu_{} = 0", j + 1)};
        if (!exact_zero_test(x, *mu.basis) && !certified_sign(x, *mu.basis))
            out = {Indecomposability::Undetermined, fmt::format("mu_{} not certified nonzero", j + 1)};
    }
    return out;
}

Indecomposability check_indecomposable(const MuSpecT2& mu)
{
    const SymbolBasis& b = *mu.basis;
    Indecomposability out;
    bool undetermined = false;
    for (int j = 0; j < mu.q(); ++j)
        if (!nonzero_pair(mu.mu[j], b, undetermined))
            return {Indecomposability::Violation, fmt::format("mu_{} = 0", j + 1)};
    if (undetermined)
        out = {Indecomposability::Undetermined, "some mu_j not certified nonzero"};
    if (mu.family != Family::Osc2)
        return out;
    if (mu.q() < 3)
        return {Indecomposability::Violation, fmt::format("Osc2 needs q >= 3, got {}", mu.q())};
    // Direction classes under exact parallelism.
    const int q = mu.q();
    std::vector<int> cls(q);
    for (int j = 0; j < q; ++j)
        cls[j] = j;
    bool open = false;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            auto s = certified_sign(det2(mu.mu[i], mu.mu[j]), b);
            if (!s)
                open = true;
            else if (*s == 0) {
                int from = cls[j], to = cls[i];
                for (auto& c : cls)
                    if (c == from)
                        c = to;
            }
        }
    std::set<int> classes(cls.begin(), cls.end());
    if (classes.size() <= 2)
        return {Indecomposability::Violation,
                fmt::format("mu lies on {} line(s) through 0", classes.size())};
    if (open)
        return {Indecomposability::Undetermined, "parallelism of some mu_i, mu_j undetermined"};
    return out;
}

T2Decision decide_T2(const MuSpecT2& mu)
{
    T2Decision out;
    auto ind = check_indecomposable(mu);
    if (ind.kind == Indecomposability::Violation)
        throw IndecomposabilityViolated(ind.reason);
    if (ind.kind == Indecomposability::Undetermined)
        out.assumptions.push_back("indecomposability not certified: " + ind.reason);
    const SymbolBasis& b = *mu.basis;
    const MuPair e1{SymbolicReal::rational(1), {}}, e2{{}, SymbolicReal::rational(1)};
    if (mu.q() == 0) {
        out.kind = T2Decision::LatticeExists;
        out.basis = {e1, e2};
        out.detail = "D_0 admits a lattice";
        return out;
    }
    std::set<int> used;
    for (const auto& m : mu.mu)
        for (const auto* c : {&m.x, &m.y})
            for (const auto& [id, v] : c->coeffs)
                used.insert(id);
    bool independent = true;
    for (int id : used)
        independent = independent && (id == 0 || b[id].independent);
    if (used.size() > 1 || !used.count(0))
        out.assumptions.push_back("declared symbols are Q-linearly independent together with 1");
    used.insert(0); // room for the completing vectors e1, e2
    const std::vector<int> ids(used.begin(), used.end());
    const std::size_t m = ids.size();
    auto flatten = [&](const MuPair& p) {
        std::vector<Rational> v(2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = p.x.coeff(ids[i]);
            v[m + i] = p.y.coeff(ids[i]);
        }
        return v;
    };
    auto unflatten = [&](const std::vector<Rational>& v) {
        MuPair p;
        for (std::size_t i = 0; i < m; ++i) {
            p.x = p.x + SymbolicReal::symbol(ids[i], v[i]);
            p.y = p.y + SymbolicReal::symbol(ids[i], v[m + i]);
        }
        return p;
    };
    std::vector<std::vector<Rational>> gens;
    for (const auto& p : mu.mu)
        gens.push_back(flatten(p));
    auto basis = lattice_basis(gens);
    out.rank_q = static_cast<int>(basis.size());
    const T2Decision::Kind negative = independent ? T2Decision::No : T2Decision::Unknown;
    if (out.rank_q > 2) {
        out.kind = negative;
        out.detail = fmt::format("rank over Q is {}", out.rank_q);
        return out;
    }
    for (const auto& v : basis)
        out.basis.push_back(unflatten(v));
    if (out.rank_q == 1) {
        const MuPair& b1 = out.basis[0];
        if (certified_sign(b1.x, b).value_or(0) != 0)
            out.basis.push_back(e2);
        else if (certified_sign(b1.y, b).value_or(0) != 0)
            out.basis.push_back(e1);
        else {
            out.kind = T2Decision::Unknown;
            out.basis.clear();
            out.detail = "generator not certified nonzero";
            return out;
        }
    } else {
        SymbolicProduct d = det2(out.basis[0], out.basis[1]);
        auto s = certified_sign(d, b);
        if (!s || *s == 0) {
            out.kind = s ? negative : T2Decision::Unknown;
            out.detail = s ? "rank over Q is 2 but the real span is a line"
                           : "real independence of the module basis undetermined";
            out.basis.clear();
            return out;
        }
    }
    // Exact membership of every mu_j in the returned lattice.
    std::vector<std::vector<Rational>> bflat;
    for (const auto& p : out.basis)
        bflat.push_back(flatten(p));
    for (const auto& g : gens) {
        RatMatrix aug(2 * m, 3);
        for (std::size_t i = 0; i < 2 * m; ++i) {
            aug(i, 0) = bflat[0][i];
            aug(i, 1) = bflat[1][i];
            aug(i, 2) = g[i];
        }
        auto piv = rref(aug);
        if (!piv.empty() && piv.back() == 2)
            throw InternalInconsistency("mu_j outside the span of the lattice basis");
        std::vector<Integer> c(2, Integer(0));
        for (std::size_t r = 0; r < piv.size(); ++r) {
            if (!is_integer(aug(r, 2)))
                throw InternalInconsistency("mu_j has non-integer lattice coordinates");
            c[piv[r]] = bmp::numerator(aug(r, 2));
        }
        out.coords.push_back(c);
    }
    out.kind = T2Decision::LatticeExists;
    return out;
}

MuSpecT2 mu_orbit_normalize_T2(const MuSpecT2& mu)
{
    return mu_orbit_normalize_T2(mu, mu.family == Family::D);
}

MuSpecT2 mu_orbit_normalize_T2(const MuSpecT2& in, bool scaling)
{
    MuSpecT2 out = in;
    const SymbolBasis& b = *in.basis;
    for (auto& p : out.mu) {
        const SymbolicReal& lead = p.x.is_zero() ? p.y : p.x;
        if (entry_sign(lead, b) < 0) {
            p.x = -p.x;
            p.y = -p.y;
        }
    }
    auto lex = [&](const MuPair& u, const MuPair& v) {
        int c = compare(u.x, v.x, b);
        return c != 0 ? c < 0 : compare(u.y, v.y, b) < 0;
    };
    std::stable_sort(out.mu.begin(), out.mu.end(), lex);
    if (!scaling || out.mu.empty())
        return out;
    std::optional<SymbolicReal> top;
    for (const auto& p : out.mu)
        for (const auto* c : {&p.x, &p.y}) {
            if (c->is_zero())
                continue;
            SymbolicReal a = entry_sign(*c, b) < 0 ? -*c : *c;
            if (!top || compare(a, *top, b) > 0)
                top = a;
        }
    const int pivot = top->coeffs.begin()->first;
    const Rational pc = top->coeffs.begin()->second;
    auto ratio = [&](const SymbolicReal& c) {
        Rational l = c.coeff(pivot) / pc;
        if (!(c == l * *top))
            throw PreconditionViolated("global scaling needs coordinates that are rational multiples of each other");
        return SymbolicReal::rational(l);
    };
    for (auto& p : out.mu) {
        p.x = ratio(p.x);
        p.y = ratio(p.y);
    }
    std::stable_sort(out.mu.begin(), out.mu.end(), lex);
    return out;
}

std::vector<Interval> wedge_invariant(const MuSpecT2& mu, int bits)
{
    std::vector<Interval> out;
    for (int i = 0; i < mu.q(); ++i)
        for (int j = i + 1; j < mu.q(); ++j)
            out.push_back(evaluate(det2(mu.mu[i], mu.mu[j]), *mu.basis, bits));
    return out;
}

} // namespace cocompact
