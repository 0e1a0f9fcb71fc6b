#include "cli.hpp"

#include "cocompact/criteria.hpp"
#include "cocompact/errors.hpp"
#include "cocompact/salem.hpp"
#include "cocompact/sympmat.hpp"

#include <fmt/format.h>

#include <map>
#include <random>

namespace cocompact::cli {

namespace {

// ---- reading -------------------------------------------------------------

class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    const json& raw() const { return j_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw SchemaError(fmt::format("{}: {}", path_.empty() ? "/" : path_, what));
    }

    bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

    Reader at(const char* key) const
    {
        if (!j_.is_object())
            fail("expected an object");
        if (!j_.contains(key))
            fail(fmt::format("missing key '{}'", key));
        return Reader(j_.at(key), path_ + "/" + key);
    }

    std::vector<Reader> items() const
    {
        if (!j_.is_array())
            fail("expected an array");
        std::vector<Reader> out;
        for (std::size_t i = 0; i < j_.size(); ++i)
            out.emplace_back(j_[i], fmt::format("{}/{}", path_, i));
        return out;
    }

    std::vector<Reader> items(std::size_t n) const
    {
        auto out = items();
        if (out.size() != n)
            fail(fmt::format("expected {} entries, got {}", n, out.size()));
        return out;
    }

    std::string str() const
    {
        if (!j_.is_string())
            fail("expected a string");
        return j_.get<std::string>();
    }

    Rational rational() const
    {
        try {
            if (j_.is_number_integer())
                return Rational(j_.get<long long>());
            if (j_.is_string())
                return parse_rational(j_.get<std::string>());
        } catch (const Error&) {
        }
        fail("expected an integer or a rational string such as \"-3/4\"");
    }

    Integer integer() const
    {
        Rational r = rational();
        if (!is_integer(r))
            fail("expected an integer");
        return bmp::numerator(r);
    }

    long small(long lo, long hi) const
    {
        Integer v = integer();
        if (v < lo || v > hi)
            fail(fmt::format("expected a value in [{}, {}]", lo, hi));
        return v.convert_to<long>();
    }

    bool boolean() const
    {
        if (!j_.is_boolean())
            fail("expected true or false");
        return j_.get<bool>();
    }

private:
    const json& j_;
    std::string path_;
};

IntPoly read_poly(const Reader& r)
{
    std::vector<Integer> c;
    for (const auto& x : r.items())
        c.push_back(x.integer());
    IntPoly p(std::move(c));
    if (p.degree() < 0)
        r.fail("polynomial is zero");
    return p;
}

IntMatrix read_int_matrix(const Reader& r)
{
    auto rows = r.items();
    if (rows.empty())
        r.fail("empty matrix");
    const std::size_t n = rows[0].items().size();
    IntMatrix m(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto cols = rows[i].items(n);
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = cols[j].integer();
    }
    return m;
}

Family read_family(const Reader& r)
{
    const std::string s = r.str();
    if (s == "Osc1")
        return Family::Osc1;
    if (s == "Osc2")
        return Family::Osc2;
    if (s == "D")
        return Family::D;
    r.fail("family must be \"Osc1\", \"Osc2\" or \"D\"");
}

// Symbol declarations; returns name -> id ("1" is id 0).
std::map<std::string, int> read_symbols(const Reader& r, SymbolBasis& basis, const std::optional<IntPoly>& f)
{
    std::map<std::string, int> ids{{"1", 0}};
    if (!r.has("symbols"))
        return ids;
    for (const auto& s : r.at("symbols").items()) {
        Symbol sym;
        if (s.has("salem")) {
            if (!f)
                s.fail("salem symbols need the polynomial f");
            const std::string kind = s.at("salem").str();
            if (kind == "angle")
                sym = salem_angle_symbol(*f, static_cast<int>(s.at("j").small(0, kMaxDegree)));
            else if (kind == "period")
                sym = salem_period_symbol(*f);
            else
                s.at("salem").fail("expected \"angle\" or \"period\"");
        } else {
            auto iv = s.at("interval").items(2);
            Rational lo = iv[0].rational(), hi = iv[1].rational();
            if (lo > hi)
                s.at("interval").fail("lo > hi");
            sym = fixed_symbol(s.at("name").str(), Interval(lo, hi), s.has("independent") ? s.at("independent").boolean() : true);
        }
        const std::string key = s.has("name") ? s.at("name").str() : sym.name;
        if (ids.count(key))
            s.fail(fmt::format("duplicate symbol '{}'", key));
        ids[key] = basis.add(std::move(sym));
    }
    return ids;
}

// A rational, or a list of {"sym": name, "coef": rational} terms.
SymbolicReal read_entry(const Reader& r, const std::map<std::string, int>& ids)
{
    if (!r.raw().is_array())
        return SymbolicReal::rational(r.rational());
    SymbolicReal x;
    for (const auto& t : r.items()) {
        const std::string name = t.has("sym") ? t.at("sym").str() : "1";
        auto it = ids.find(name);
        if (it == ids.end())
            t.fail(fmt::format("unknown symbol '{}'", name));
        Rational c = t.has("coef") ? t.at("coef").rational() : Rational(1);
        x = x + (it->second == 0 ? SymbolicReal::rational(c) : SymbolicReal::symbol(it->second, c));
    }
    return x;
}

MuSpecT1 read_mu_t1(const Reader& r, const std::optional<IntPoly>& f)
{
    MuSpecT1 mu;
    auto ids = read_symbols(r, *mu.basis, f);
    for (const auto& e : r.at("entries").items())
        mu.mu.push_back(read_entry(e, ids));
    return mu;
}

MuSpecT2 read_mu_t2(const Reader& r, Family family)
{
    MuSpecT2 mu;
    mu.family = family;
    auto ids = read_symbols(r, *mu.basis, std::nullopt);
    for (const auto& e : r.at("entries").items()) {
        auto xy = e.items(2);
        mu.mu.push_back({read_entry(xy[0], ids), read_entry(xy[1], ids)});
    }
    return mu;
}

std::array<Rational, 2> read_pair(const Reader& r)
{
    auto v = r.items(2);
    return {v[0].rational(), v[1].rational()};
}

// ---- writing -------------------------------------------------------------

std::string rs(const Rational& x) { return to_string(x); }

json poly_json(const IntPoly& p)
{
    json out = json::array();
    for (const auto& c : p.c)
        out.push_back(c.str());
    return out;
}

json matrix_json(const IntMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).str());
        out.push_back(row);
    }
    return out;
}

json matrix_json(const RatMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(rs(m(i, j)));
        out.push_back(row);
    }
    return out;
}

std::string dbl(const Interval& iv) { return fmt::format("{:.17g}", to_double(iv.mid())); }

json verdict(const char* status)
{
    json out;
    out["status"] = status;
    out["witness"] = nullptr;
    out["assumptions"] = json::array();
    out["bounds_used"] = json::object();
    return out;
}

json assignments_json(const std::vector<MuAssignment>& w)
{
    json out = json::array();
    for (const auto& a : w)
        out.push_back({{"slot", a.slot}, {"sign", a.sign}, {"k", a.k.str()}});
    return out;
}

json strings(const std::vector<std::string>& v)
{
    json out = json::array();
    for (const auto& s : v)
        out.push_back(s);
    return out;
}

json elem_json(const LatticeElem& g, const std::string& name)
{
    json out;
    out["name"] = name;
    if (auto* e = std::get_if<GammaElem>(&g)) {
        out["z"] = rs(e->z);
        json v = json::array();
        for (const auto& x : e->v)
            v.push_back(x.str());
        out["v"] = v;
        out["n"] = e->n.str();
        return out;
    }
    const auto& e = std::get<DqElement>(g);
    out["zeta"] = json::array({rs(e.zeta[0]), rs(e.zeta[1])});
    json a = json::array();
    for (const auto& x : e.a)
        a.push_back(rs(x));
    out["a"] = a;
    out["s"] = rs(e.s);
    out["tau"] = json::array({rs(e.tau[0]), rs(e.tau[1])});
    return out;
}

// ---- subcommands -----------------------------------------------------------

Rational tol_of(const Options& o) { return o.tol ? *o.tol : kDefaultSalemTol; }

json salem_check(const Reader& in, const Options& opt)
{
    const IntPoly p = read_poly(in.at("poly"));
    const Rational tol = tol_of(opt);
    auto cls = classify_F_plus(p, tol);
    json out = verdict(cls.member ? "yes" : "no");
    if (cls.member) {
        const auto& d = *cls.data;
        json angles = json::array();
        for (const auto& up : d.unit_pairs)
            angles.push_back(dbl(up.s));
        out["witness"] = {{"k", cls.k}, {"degree", d.degree()}, {"r", dbl(d.r.re)}, {"angles", angles}};
    } else {
        out["reason"] = to_string(*cls.reason);
    }
    out["detail"] = cls.detail;
    out["bounds_used"] = {{"tol", rs(tol)}};
    return out;
}

json salem_enum(const Reader& in, const Options&)
{
    long a0 = -8, a1 = 8, b0 = -8, b1 = 8;
    if (in.has("a")) {
        auto a = in.at("a").items(2);
        a0 = a[0].small(-1000, 1000);
        a1 = a[1].small(-1000, 1000);
    }
    if (in.has("b")) {
        auto b = in.at("b").items(2);
        b0 = b[0].small(-1000, 1000);
        b1 = b[1].small(-1000, 1000);
    }
    auto found = enumerate_F4(a0, a1, b0, b1);
    json params = json::array();
    for (const auto& p : found)
        params.push_back(json::array({p.a, p.b}));
    json out = verdict("yes");
    out["witness"] = {{"count", found.size()}, {"params", params}};
    out["bounds_used"] = {{"a", json::array({a0, a1})}, {"b", json::array({b0, b1})}};
    return out;
}

json salem_equiv(const Reader& in, const Options& opt)
{
    const IntPoly p1 = read_poly(in.at("p1")), p2 = read_poly(in.at("p2"));
    const int bound = static_cast<int>(opt.bound.value_or(kDefaultEquivalenceBound));
    auto eq = salem_equivalent(p1, p2, bound);
    static const char* st[] = {"yes", "no", "unknown"};
    json out = verdict(st[eq.kind]);
    if (eq.kind == Equivalence::Equivalent)
        out["witness"] = {{"k1", eq.k1}, {"k2", eq.k2}};
    out["reason"] = eq.reason;
    out["bounds_used"] = {{"k_bound", bound}};
    return out;
}

json mu_check_json(const MuCheck& c, int bound)
{
    static const char* st[] = {"yes", "no", "unknown"};
    json out = verdict(st[c.kind]);
    if (c.kind == MuCheck::Member)
        out["witness"] = {{"assignments", assignments_json(c.witness)}};
    out["assumptions"] = strings(c.assumptions);
    out["exact"] = c.exact;
    out["detail"] = c.detail;
    out["bounds_used"] = {{"k_search_bound", bound}, {"bits", c.bits}};
    return out;
}

json mu_check_t1(const Reader& in, const Options& opt)
{
    const IntPoly f = read_poly(in.at("f"));
    auto mu = read_mu_t1(in.at("mu"), f);
    const int bound = static_cast<int>(opt.bound.value_or(kDefaultOffsetBound));
    return mu_check_json(check_mu_T1(mu, f, bound), bound);
}

json decide_t1(const Reader& in, const Options& opt)
{
    auto mu = read_mu_t1(in.at("mu"), std::nullopt);
    const int height = in.has("height") ? static_cast<int>(in.at("height").small(0, 1000)) : 10;
    const int degree = static_cast<int>(
        opt.bound.value_or(in.has("degree") ? in.at("degree").small(2, kMaxDegree) : 8));
    auto d = decide_T1(mu, height, degree);
    json out = verdict(d.kind == T1Decision::LatticeExists ? "yes" : "unknown");
    if (d.kind == T1Decision::LatticeExists)
        out["witness"] = {{"f", poly_json(*d.f)}, {"assignments", assignments_json(d.check.witness)}};
    out["assumptions"] = strings(d.assumptions);
    out["detail"] = d.detail;
    out["counts"] = {{"candidates", d.candidates}, {"members", d.members}, {"unknown", d.unknown}};
    out["bounds_used"] = {{"height", height}, {"degree", degree}, {"k_search_bound", kDefaultOffsetBound}};
    return out;
}

json decide_t2(const Reader& in, const Options&)
{
    const Family fam = in.has("family") ? read_family(in.at("family")) : Family::D;
    if (fam == Family::Osc1)
        in.at("family").fail("decide-t2 is for Osc2 and D");
    auto mu = read_mu_t2(in.at("mu"), fam);
    auto d = decide_T2(mu);
    static const char* st[] = {"yes", "no", "unknown"};
    json out = verdict(st[d.kind]);
    if (d.kind == T2Decision::LatticeExists) {
        json basis = json::array(), coords = json::array();
        for (const auto& b : d.basis)
            basis.push_back(json::array({to_string(b.x, *mu.basis), to_string(b.y, *mu.basis)}));
        for (const auto& c : d.coords)
            coords.push_back(json::array({c[0].str(), c[1].str()}));
        out["witness"] = {{"basis", basis}, {"coords", coords}};
    }
    out["assumptions"] = strings(d.assumptions);
    out["detail"] = d.detail;
    out["rank_q"] = d.rank_q;
    return out;
}

json build_lattice(const Reader& in, const Options&)
{
    const long theorem = in.at("theorem").small(1, 2);
    LatticeModel lat;
    if (theorem == 1) {
        lat = build_lattice_T1(read_poly(in.at("f")), static_cast<int>(in.at("q").small(0, 64)));
    } else {
        const Family fam = read_family(in.at("family"));
        if (fam == Family::Osc1)
            in.at("family").fail("must be Osc2 or D");
        lat = build_lattice_T2(read_mu_t2(in.at("mu"), fam));
    }
    json out = verdict("yes");
    out["witness"] = lattice_to_json(lat);
    return out;
}

json verify_lattice(const Reader& in, const Options& opt)
{
    const Reader body = in.has("witness") ? in.at("witness") : in;
    LatticeModel lat = lattice_from_json(body.raw());
    const int len = static_cast<int>(
        opt.bound.value_or(lat.family == Family::Osc1 ? kClosureLengthT1 : kClosureLengthT2));
    json w;
    bool ok = true;
    if (lat.family == Family::Osc1) {
        const int qbar = lat.f.degree() / 2 - 1;
        auto rep = verify_LKO(lat.gamma->base(), lat.f * IntPoly{-1, 1}.pow(static_cast<unsigned>(2 * (lat.q - qbar))));
        json checks = json::array();
        for (const auto& c : rep.checks)
            checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        w["lko"] = checks;
        ok = rep.ok();
    }
    auto cr = closure_check(lat, len);
    w["closure"] = {{"word_length", cr.word_length}, {"generators", cr.generators}, {"words", cr.words},
                    {"violations", cr.violations}, {"max_height", cr.max_height.str()}};
    json out = verdict(ok ? "yes" : "no");
    out["witness"] = w;
    out["bounds_used"] = {{"word_length", len}};
    return out;
}

SympPair read_pair_matrices(const Reader& r)
{
    SympPair sp{read_int_matrix(r.at("A")), read_int_matrix(r.at("J"))};
    if (!sp.A.square() || sp.A.rows() != sp.J.rows() || !sp.J.square())
        r.fail("A and J must be square of the same size");
    return sp;
}

json commensurable_cmd(const Reader& in, const Options& opt)
{
    auto a1 = read_pair_matrices(in.at("a1")), a2 = read_pair_matrices(in.at("a2"));
    const int pb = static_cast<int>(opt.bound.value_or(kDefaultPowerBound));
    auto c = commensurable(a1, a2, pb, kDefaultSearchBound);
    static const char* st[] = {"yes", "no", "unknown"};
    json out = verdict(st[c.kind]);
    if (c.kind == Commensurability::Proven)
        out["witness"] = {{"S", matrix_json(c.S)}, {"m", rs(c.m)}, {"n1", c.n1}, {"n2", c.n2}};
    out["invariants"] = strings(c.invariants);
    out["detail"] = c.detail;
    out["bounds_used"] = {{"power_bound", pb}, {"search_bound", kDefaultSearchBound}};
    return out;
}

json bch_check(const Reader& in, const Options& opt)
{
    DqParams p = dq_params(IntMatrix(0, 2));
    if (in.has("units")) {
        const std::string u = in.at("units").str();
        if (u == "d0")
            p = d0_params();
        else if (u != "lambda")
            in.at("units").fail("expected \"lambda\" or \"d0\"");
    }
    std::vector<std::pair<std::array<Rational, 2>, std::array<Rational, 2>>> pairs;
    json bounds = json::object();
    if (in.has("pairs")) {
        for (const auto& e : in.at("pairs").items())
            pairs.push_back({read_pair(e.at("t")), read_pair(e.at("u"))});
    } else {
        // n x n grid of seeded random rationals with numerators and
        // denominators bounded by --bound (default 12).
        const long n = in.has("grid") ? in.at("grid").small(1, 200) : 20;
        const long h = opt.bound.value_or(12);
        std::mt19937_64 rng(opt.seed);
        auto draw = [&] {
            std::uniform_int_distribution<long> num(-h, h), den(1, h);
            return Rational(num(rng), den(rng));
        };
        std::vector<std::array<Rational, 2>> ts;
        for (long i = 0; i < n; ++i)
            ts.push_back({draw(), draw()});
        for (const auto& t : ts)
            for (const auto& u : ts)
                pairs.push_back({t, u});
        bounds = {{"grid", n}, {"height", h}, {"seed", opt.seed}};
    }
    for (const auto& [t, u] : pairs) {
        auto r = bch_crosscheck_Ell(t, u, p);
        if (!r.equal)
            throw InternalInconsistency(fmt::format("l(t) l(u) closed form {} differs from BCH {}",
                                                    to_string(r.closed), to_string(r.bch)));
    }
    json out = verdict("yes");
    out["witness"] = {{"checked", pairs.size()}};
    out["bounds_used"] = bounds;
    return out;
}

using Handler = json (*)(const Reader&, const Options&);

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> h{
        {"salem-check", salem_check},   {"salem-enum", salem_enum},         {"salem-equiv", salem_equiv},
        {"mu-check-t1", mu_check_t1},   {"decide-t1", decide_t1},           {"decide-t2", decide_t2},
        {"build-lattice", build_lattice}, {"verify-lattice", verify_lattice}, {"commensurable", commensurable_cmd},
        {"bch-check", bch_check},
    };
    return h;
}

json error_json(const std::string& kind, const std::string& what)
{
    json out = verdict("error");
    out["error"] = {{"kind", kind}, {"message", what}};
    return out;
}

} // namespace

const std::vector<std::string>& subcommands()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : handlers())
            v.push_back(k);
        return v;
    }();
    return names;
}

json lattice_to_json(const LatticeModel& lat)
{
    json out;
    out["family"] = to_string(lat.family);
    out["lattice"] = lat.lattice;
    json units = json::object();
    for (const auto& [k, v] : lat.units)
        units[k] = v;
    out["units"] = units;
    out["notes"] = strings(lat.notes);
    if (lat.family == Family::Osc1) {
        out["f"] = poly_json(lat.f);
        out["q"] = lat.q;
        out["A"] = matrix_json(lat.gamma->base().A);
        out["J"] = matrix_json(lat.gamma->base().J);
    } else {
        out["mu_coords"] = matrix_json(lat.params.c);
        out["alpha_unit"] = rs(lat.params.alpha_unit);
        out["flat_unit"] = rs(lat.params.flat_unit);
    }
    out["membership"] = {{"z_step", rs(lat.z_step)}, {"s_step", rs(lat.s_step)}};
    json gens = json::array();
    for (std::size_t i = 0; i < lat.generators.size(); ++i)
        gens.push_back(elem_json(lat.generators[i], lat.names[i]));
    out["generators"] = gens;
    return out;
}

LatticeModel lattice_from_json(const json& j)
{
    Reader r(j, "");
    const Family fam = read_family(r.at("family"));
    LatticeModel lat;
    // Membership data is rebuilt from the family, never read back.
    if (fam == Family::Osc1) {
        lat.family = fam;
        lat.f = read_poly(r.at("f"));
        lat.q = static_cast<int>(r.at("q").small(0, 64));
        SympPair sp = read_pair_matrices(r);
        if (sp.n() != static_cast<std::size_t>(2 * lat.q + 2))
            r.at("A").fail("size must be 2q + 2");
        lat.gamma = std::make_shared<const GammaA>(sp);
        lat.z_step = Rational(1, 2);
        lat.lattice = fmt::format("1/2 Z x Z^{} x t'Z", sp.n());
    } else {
        IntMatrix c = r.at("mu_coords").raw().empty() ? IntMatrix(0, 2) : read_int_matrix(r.at("mu_coords"));
        if (c.cols() != 2)
            r.at("mu_coords").fail("rows must have two entries");
        lat = lattice_T2_from_coords(fam, c);
    }
    lat.generators.clear();
    lat.names.clear();
    for (const auto& g : r.at("generators").items()) {
        lat.names.push_back(g.at("name").str());
        if (fam == Family::Osc1) {
            GammaElem e;
            e.z = g.at("z").rational();
            for (const auto& x : g.at("v").items(lat.gamma->dim()))
                e.v.push_back(x.integer());
            e.n = g.at("n").integer();
            lat.generators.emplace_back(std::move(e));
        } else {
            DqElement e;
            e.zeta = read_pair(g.at("zeta"));
            for (const auto& x : g.at("a").items(static_cast<std::size_t>(2 * lat.params.q())))
                e.a.push_back(x.rational());
            e.s = g.at("s").rational();
            e.tau = read_pair(g.at("tau"));
            lat.generators.emplace_back(std::move(e));
        }
    }
    if (lat.generators.empty())
        r.at("generators").fail("no generators");
    // units and notes are descriptive; keep what the file says
    if (r.has("units")) {
        const Reader u = r.at("units");
        if (!u.raw().is_object())
            u.fail("expected an object");
        lat.units.clear();
        for (const auto& [k, _] : u.raw().items())
            lat.units.emplace_back(k, u.at(k.c_str()).str());
    }
    if (r.has("notes")) {
        lat.notes.clear();
        for (const auto& n : r.at("notes").items())
            lat.notes.push_back(n.str());
    }
    return lat;
}

Outcome run(const std::string& subcommand, const std::string& input, const Options& opt)
{
    Outcome res;
    auto it = handlers().find(subcommand);
    if (it == handlers().end()) {
        res.output = error_json("usage", "unknown subcommand '" + subcommand + "'");
        res.exit_code = kUsage;
        return res;
    }
    try {
        json in;
        try {
            in = json::parse(input);
        } catch (const json::parse_error& e) {
            throw SchemaError(std::string("/: malformed JSON: ") + e.what());
        }
        res.output = it->second(Reader(in, ""), opt);
    } catch (const SchemaError& e) {
        res.output = error_json("schema", e.what());
        res.exit_code = kError;
    } catch (const InternalInconsistency& e) {
        res.output = error_json("internal", e.what());
        res.exit_code = kInternal;
    } catch (const ClosureViolation& e) {
        res.output = error_json("closure", e.what());
        res.exit_code = kInternal;
    } catch (const Error& e) {
        res.output = error_json("precondition", e.what());
        res.exit_code = kError;
    } catch (const std::exception& e) {
        res.output = error_json("internal", e.what());
        res.exit_code = kInternal;
    }
    json ordered;
    ordered["subcommand"] = subcommand;
    for (auto& [k, v] : res.output.items())
        ordered[k] = v;
    ordered["bounds_used"]["seed"] = opt.seed;
    if (opt.tol && !ordered["bounds_used"].contains("tol"))
        ordered["bounds_used"]["tol"] = to_string(*opt.tol);
    res.output = std::move(ordered);
    return res;
}

} // namespace cocompact::cli
