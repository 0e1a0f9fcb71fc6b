#include "cocompact/groups.hpp"

#include "cocompact/errors.hpp"
#include "cocompact/salem.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cocompact {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2 * std::numbers::pi;

void require_size(std::size_t got, std::size_t want, const char* what)
{
    if (got != want)
        throw ModelMismatch(fmt::format("{} has size {}, model expects {}", what, got, want));
}

Integer height(const Rational& x)
{
    Integer n = bmp::abs(bmp::numerator(x));
    Integer d = bmp::denominator(x);
    return std::max(n, d);
}

bool in_step(const Rational& x, const Rational& step) { return is_integer(x / step); }

// Unit-circle eigenvalue e^{i theta_j} of the companion block C: eigenvector w
// and the sign of Im(w^T J w-bar). omega has positive sign on the matching
// numeric eigenvector, so the signs must all be +1.
struct UnitEigen {
    Eigen::VectorXcd w;
    int sign = 0;
};

Eigen::MatrixXd to_eigen(const IntMatrix& m)
{
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j).convert_to<double>();
    return out;
}

Eigen::VectorXcd eigenvector_near(const Eigen::ComplexEigenSolver<Eigen::MatrixXcd>& es, cd target)
{
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i) - target) < std::abs(es.eigenvalues()(best) - target))
            best = i;
    if (std::abs(es.eigenvalues()(best) - target) > 1e-6)
        throw InternalInconsistency("companion eigenvalue not found near its certified root");
    Eigen::VectorXcd v = es.eigenvectors().col(best);
    if (target.imag() == 0) {
        // Real eigenvalue: rotate the arbitrary phase away.
        Eigen::Index k;
        v.cwiseAbs().maxCoeff(&k);
        v /= v(k) / std::abs(v(k));
        v = v.real().cast<cd>();
    }
    return v;
}

std::vector<UnitEigen> unit_eigen(const IntMatrix& c, const IntMatrix& jc, const std::vector<double>& theta)
{
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(c).cast<cd>());
    const Eigen::MatrixXcd j = to_eigen(jc).cast<cd>();
    std::vector<UnitEigen> out;
    for (double th : theta) {
        UnitEigen u;
        u.w = eigenvector_near(es, std::polar(1.0, th));
        cd val = u.w.transpose() * j * u.w.conjugate();
        u.sign = val.imag() > 0 ? 1 : -1;
        if (std::abs(val.imag()) < 1e-12 * u.w.squaredNorm())
            throw InternalInconsistency("invariant form degenerate on a unit-circle eigenspace");
        out.push_back(std::move(u));
    }
    return out;
}

struct SalemNumbers {
    int qbar = 0;
    double r = 0;
    std::vector<double> theta;
};

SalemNumbers salem_numbers(const IntPoly& f)
{
    auto cls = classify_F_plus(f);
    if (!cls.member)
        throw PreconditionViolated(to_string(f) + " is not in F+");
    const auto& d = *cls.data;
    SalemNumbers out;
    out.qbar = d.k - 1;
    out.r = to_double(d.r.re.mid());
    for (const auto& up : d.unit_pairs)
        out.theta.push_back(to_double(up.s.mid()));
    return out;
}

Rational lcm_of_denominators(const RatMatrix& m)
{
    Integer l = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer d = bmp::denominator(m(i, j));
            l = l / bmp::gcd(l, d) * d;
        }
    return Rational(l);
}

// Rational of least denominator strictly between a < b, with a margin.
Rational separator(double a, double b)
{
    const double margin = (b - a) / 8;
    for (long d = 1; d <= (1L << 24); ++d) {
        const long n = static_cast<long>(std::floor((a + margin) * d)) + 1;
        if (static_cast<double>(n) / d < b - margin)
            return Rational(n, d);
    }
    throw InternalInconsistency("unit-circle eigenvalues too close to separate");
}

} // namespace

// ---- Osc1 ------------------------------------------------------------------

GammaElem osc1_mul(const GammaA& g, const GammaElem& a, const GammaElem& b)
{
    require_size(a.v.size(), g.dim(), "left factor");
    require_size(b.v.size(), g.dim(), "right factor");
    return g.mul(a, b);
}

SympPair osc1_compatible_pair(const IntPoly& f, int q)
{
    SympPair sp = build_A_for_theorem1(f, q);
    const auto sn = salem_numbers(f);
    const std::size_t m = 2 * static_cast<std::size_t>(q - sn.qbar);
    const std::size_t d = sp.n() - m;
    IntMatrix c(d, d), jc(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            c(i, j) = sp.A(m + i, m + j);
            jc(i, j) = sp.J(m + i, m + j);
        }
    auto ue = unit_eigen(c, jc, sn.theta);
    if (std::all_of(ue.begin(), ue.end(), [](const UnitEigen& u) { return u.sign > 0; }))
        return sp;

    // The form on the e^{+-i theta_j} plane scales by p(2 cos theta_j) under
    // J -> J p(C + C^{-1}). Choose p = +-prod (x - a_i) with separators a_i.
    std::vector<std::size_t> order(ue.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    auto node = [&](std::size_t i) { return 2 * std::cos(sn.theta[i]); };
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return node(x) > node(y); });
    // p must have sign sign_j at node j; p = eps prod (x - a_i) has sign eps
    // above every separator, and one separator sits wherever the sign changes.
    std::vector<Rational> seps;
    for (std::size_t i = 1; i < order.size(); ++i)
        if (ue[order[i]].sign != ue[order[i - 1]].sign)
            seps.push_back(separator(node(order[i]), node(order[i - 1])));
    const RatMatrix s = to_rat(c) + to_rat(inverse_unimodular(c));
    RatMatrix pj = to_rat(jc);
    for (const auto& a : seps)
        pj = pj * (s - a * RatMatrix::identity(d));
    if (ue[order[0]].sign < 0)
        pj = Rational(-1) * pj;
    IntMatrix jn = to_int(lcm_of_denominators(pj) * pj);
    Integer g = content(jn);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            jn(i, j) /= g;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            sp.J(m + i, m + j) = jn(i, j);
    if (sp.A.transpose() * sp.J * sp.A != sp.J)
        throw InternalInconsistency("adjusted form is not invariant");
    for (const auto& u : unit_eigen(c, jn, sn.theta))
        if (u.sign < 0)
            throw InternalInconsistency("form sign adjustment failed");
    return sp;
}

Osc1Numeric::Osc1Numeric(const IntPoly& f, int q, const SympPair& sp) : q_(q)
{
    const auto sn = salem_numbers(f);
    const std::size_t n = dim();
    require_size(sp.n(), n, "SympPair");
    const std::size_t m = 2 * static_cast<std::size_t>(q - sn.qbar);
    const std::size_t d = n - m;
    tprime_ = std::log(sn.r);
    for (double th : sn.theta)
        mu_.push_back(th / tprime_);
    while (mu_.size() < static_cast<std::size_t>(q))
        mu_.push_back(kTwoPi / tprime_);

    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
    omega(0, 1) = 1;
    omega(1, 0) = -1;
    for (int j = 0; j < q; ++j) {
        omega(2 + 2 * j, 3 + 2 * j) = mu_[j];
        omega(3 + 2 * j, 2 + 2 * j) = -mu_[j];
    }

    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    // Identity block: (e_{2i}, e_{2i+1}) -> (1, i) / sqrt(mu) on a trivial factor.
    for (std::size_t i = 0; i < m / 2; ++i) {
        const std::size_t fac = sn.qbar + i;
        const double sc = 1 / std::sqrt(mu_[fac]);
        p(2 + 2 * fac, 2 * i) = sc;
        p(3 + 2 * fac, 2 * i + 1) = sc;
    }

    // Companion block onto the first d numeric coordinates, eigenvector by
    // eigenvector: w_lambda -> beta_lambda u_lambda.
    IntMatrix c(d, d), jc(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            c(i, j) = sp.A(m + i, m + j);
            jc(i, j) = sp.J(m + i, m + j);
        }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(c).cast<cd>());
    const Eigen::MatrixXcd jcd = to_eigen(jc).cast<cd>();
    const Eigen::MatrixXcd om = omega.topLeftCorner(d, d).cast<cd>();
    Eigen::MatrixXcd w(d, d), u = Eigen::MatrixXcd::Zero(d, d);

    Eigen::VectorXcd wr = eigenvector_near(es, sn.r), wi = eigenvector_near(es, 1 / sn.r);
    Eigen::VectorXcd ur = Eigen::VectorXcd::Zero(d), ui = Eigen::VectorXcd::Zero(d);
    ur(0) = ur(1) = 1;
    ui(0) = 1;
    ui(1) = -1;
    cd ratio = cd(wr.transpose() * jcd * wi) / cd(ur.transpose() * om * ui);
    w.col(0) = wr;
    w.col(1) = wi;
    u.col(0) = ratio * ur;
    u.col(1) = ui;
    auto ue = unit_eigen(c, jc, sn.theta);
    for (int j = 0; j < sn.qbar; ++j) {
        Eigen::VectorXcd uj = Eigen::VectorXcd::Zero(d);
        uj(2 + 2 * j) = 1;
        uj(3 + 2 * j) = cd(0, -1);
        const Eigen::VectorXcd& wj = ue[j].w;
        cd rj = cd(wj.transpose() * jcd * wj.conjugate()) / cd(uj.transpose() * om * uj.conjugate());
        if (rj.real() <= 0)
            throw InternalInconsistency(
                fmt::format("form sign differs from omega on the plane of angle {}", sn.theta[j]));
        const double beta = std::sqrt(rj.real());
        w.col(2 + 2 * j) = wj;
        w.col(3 + 2 * j) = wj.conjugate();
        u.col(2 + 2 * j) = beta * uj;
        u.col(3 + 2 * j) = beta * uj.conjugate();
    }
    Eigen::MatrixXcd pc = u * w.inverse();
    if (pc.imag().cwiseAbs().maxCoeff() > 1e-9 * (1 + pc.real().cwiseAbs().maxCoeff()))
        throw InternalInconsistency("change of basis is not real");
    p.block(0, m, d, d) = pc.real();

    p_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p_[i * n + j] = p(i, j);

    // e^{t'L} column by column.
    Eigen::MatrixXd mt(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0);
        e[j] = 1;
        auto col = exp_tL(tprime_, e);
        for (std::size_t i = 0; i < n; ++i)
            mt(i, j) = col[i];
    }
    const Eigen::MatrixXd a = to_eigen(sp.A), jj = to_eigen(sp.J);
    res_intertwine_ = (mt * p - p * a).cwiseAbs().maxCoeff() / (1 + p.cwiseAbs().maxCoeff());
    // Relative to the size of J, which can be large after a sign adjustment.
    res_form_ = (p.transpose() * omega * p - jj).cwiseAbs().maxCoeff() / jj.cwiseAbs().maxCoeff();
    if (res_intertwine_ > 1e-8 || res_form_ > 1e-8)
        throw InternalInconsistency(fmt::format("numeric Osc1 model residuals {} and {}", res_intertwine_, res_form_));
}

Osc1Point Osc1Numeric::identity() const
{
    Osc1Point o;
    o.a.assign(dim(), 0);
    return o;
}

std::vector<double> Osc1Numeric::exp_tL(double t, const std::vector<double>& a) const
{
    require_size(a.size(), dim(), "vector");
    std::vector<double> out(a.size());
    const double ch = std::cosh(t), sh = std::sinh(t);
    out[0] = ch * a[0] + sh * a[1];
    out[1] = sh * a[0] + ch * a[1];
    for (int j = 0; j < q_; ++j) {
        const double c = std::cos(t * mu_[j]), s = std::sin(t * mu_[j]);
        const double x = a[2 + 2 * j], y = a[3 + 2 * j];
        out[2 + 2 * j] = c * x - s * y;
        out[3 + 2 * j] = s * x + c * y;
    }
    return out;
}

double Osc1Numeric::omega(const std::vector<double>& a, const std::vector<double>& b) const
{
    require_size(a.size(), dim(), "vector");
    require_size(b.size(), dim(), "vector");
    // <L a, b> with L(x0, y0) = (y0, x0) and L = mu_j i on factor j.
    double s = -a[1] * b[0] + a[0] * b[1];
    for (int j = 0; j < q_; ++j)
        s += mu_[j] * (a[2 + 2 * j] * b[3 + 2 * j] - a[3 + 2 * j] * b[2 + 2 * j]);
    return s;
}

Osc1Point Osc1Numeric::mul(const Osc1Point& a, const Osc1Point& b) const
{
    require_size(a.a.size(), dim(), "left factor");
    require_size(b.a.size(), dim(), "right factor");
    auto rb = exp_tL(a.t, b.a);
    Osc1Point o;
    o.z = a.z + b.z + omega(a.a, rb) / 2;
    o.a.resize(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        o.a[i] = a.a[i] + rb[i];
    o.t = a.t + b.t;
    return o;
}

Osc1Point Osc1Numeric::inverse(const Osc1Point& a) const
{
    Osc1Point o;
    o.z = -a.z;
    o.a = exp_tL(-a.t, a.a);
    for (auto& x : o.a)
        x = -x;
    o.t = -a.t;
    return o;
}

Osc1Point Osc1Numeric::embed(const GammaElem& g) const
{
    require_size(g.v.size(), dim(), "element");
    Osc1Point o;
    o.z = to_double(g.z);
    o.a.assign(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            o.a[i] += p_[i * dim() + j] * g.v[j].convert_to<double>();
    o.t = g.n.convert_to<double>() * tprime_;
    return o;
}

std::vector<cd> Osc1Numeric::conjugation_eigenvalues() const
{
    const std::size_t n = dim();
    Eigen::MatrixXd mt(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0);
        e[j] = 1;
        auto col = exp_tL(tprime_, e);
        for (std::size_t i = 0; i < n; ++i)
            mt(i, j) = col[i];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(mt, false);
    std::vector<cd> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        out.push_back(es.eigenvalues()(i));
    return out;
}

double distance(const Osc1Point& a, const Osc1Point& b)
{
    double d = std::max(std::abs(a.z - b.z), std::abs(a.t - b.t));
    for (std::size_t i = 0; i < std::min(a.a.size(), b.a.size()); ++i)
        d = std::max(d, std::abs(a.a[i] - b.a[i]));
    return a.a.size() == b.a.size() ? d : INFINITY;
}

EigenvalueCheck osc1_eigenvalue_check(const Osc1Numeric& m, const IntPoly& f, double slack)
{
    const int qbar = f.degree() / 2 - 1;
    IntPoly target = f * IntPoly{-1, 1}.pow(static_cast<unsigned>(2 * (m.q() - qbar)));
    auto roots = isolate_roots(target, pow2(-40));
    auto eig = m.conjugation_eigenvalues();
    EigenvalueCheck out;
    out.eigenvalues = eig.size();
    std::vector<int> hits(roots.size(), 0);
    bool every_placed = true;
    for (const auto& e : eig) {
        double best = INFINITY;
        std::size_t where = roots.size();
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const auto& r = roots[i];
            const double dx = std::max({0.0, to_double(r.re.lo) - e.real(), e.real() - to_double(r.re.hi)});
            const double dy = std::max({0.0, to_double(r.im.lo) - e.imag(), e.imag() - to_double(r.im.hi)});
            const double dist = std::hypot(dx, dy);
            if (dist < best) {
                best = dist;
                where = i;
            }
        }
        out.max_distance = std::max(out.max_distance, best);
        if (best > slack)
            every_placed = false;
        else
            ++hits[where];
    }
    bool counts = true;
    for (std::size_t i = 0; i < roots.size(); ++i)
        counts = counts && hits[i] == roots[i].multiplicity;
    out.ok = every_placed && counts && eig.size() == static_cast<std::size_t>(target.degree());
    out.detail = fmt::format("{} eigenvalues against {} certified roots of {}", eig.size(), roots.size(),
                             to_string(target));
    return out;
}

// ---- D_q / Osc2 ------------------------------------------------------------

DqParams dq_params(const IntMatrix& c)
{
    DqParams p;
    p.family = Family::D;
    p.c = c;
    p.alpha_unit = 2;              // lambda sqrt(2 pi) / (lambda sqrt(pi/2))
    p.flat_unit = Rational(1, 2);  // lambda sqrt(pi/2) * lambda / sqrt(2 pi) = lambda^2 / 2
    return p;
}

DqParams d0_params()
{
    DqParams p;
    p.family = Family::D;
    p.c = IntMatrix(0, 2);
    p.alpha_unit = 1;
    p.flat_unit = 1;
    return p;
}

DqParams osc2_params(const IntMatrix& c)
{
    DqParams p;
    p.family = Family::Osc2;
    p.c = c;
    return p;
}

std::string to_string(const DqElement& g)
{
    std::string a;
    for (std::size_t i = 0; i < g.a.size(); ++i)
        a += (i ? ", " : "") + to_string(g.a[i]);
    return fmt::format("h(({}, {}), ({}), {}) l({}, {})", to_string(g.zeta[0]), to_string(g.zeta[1]), a,
                       to_string(g.s), to_string(g.tau[0]), to_string(g.tau[1]));
}

DqElement dq_identity(const DqParams& p)
{
    DqElement g;
    g.a.assign(2 * p.q(), Rational(0));
    return g;
}

DqElement dq_h(const DqParams& p, std::array<Rational, 2> zeta, std::vector<Rational> a, Rational s)
{
    require_size(a.size(), 2 * p.q(), "a");
    return DqElement{zeta, std::move(a), std::move(s), {}};
}

DqElement dq_l(const DqParams& p, std::array<Rational, 2> tau)
{
    DqElement g = dq_identity(p);
    g.tau = tau;
    return g;
}

Rational dq_alpha(const DqParams& p, const std::array<Rational, 2>& t, const std::array<Rational, 2>& u)
{
    return p.alpha_unit * (t[0] * u[1] - t[1] * u[0]);
}

std::array<Rational, 2> dq_flat(const DqParams& p, const Rational& s, const std::array<Rational, 2>& t)
{
    return {-p.flat_unit * s * t[1], p.flat_unit * s * t[0]};
}

std::array<Rational, 2> dq_omega(const DqParams& p, const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    require_size(a.size(), 2 * p.q(), "a");
    require_size(b.size(), 2 * p.q(), "a");
    std::array<Rational, 2> out{};
    for (int k = 0; k < p.q(); ++k) {
        Rational w = a[2 * k] * b[2 * k + 1] - a[2 * k + 1] * b[2 * k];
        out[0] += Rational(p.c(k, 0)) * w;
        out[1] += Rational(p.c(k, 1)) * w;
    }
    return out;
}

bool rotation_trivial(const DqParams& p, const std::array<Rational, 2>& tau)
{
    for (int k = 0; k < p.q(); ++k)
        if (!is_integer(Rational(p.c(k, 0)) * tau[0] + Rational(p.c(k, 1)) * tau[1]))
            return false;
    return true;
}

DqElement dq_ell(const DqParams& p, const std::array<Rational, 2>& t, const std::array<Rational, 2>& u)
{
    const Rational al = dq_alpha(p, t, u);
    DqElement g = dq_identity(p);
    // -1/3 alpha (t + u/2)^flat; alpha lives in s units, so this is a flat of s = alpha.
    auto fl = dq_flat(p, al, {t[0] + u[0] / 2, t[1] + u[1] / 2});
    g.zeta = {-fl[0] / 3, -fl[1] / 3};
    g.s = al / 2;
    g.tau = {t[0] + u[0], t[1] + u[1]};
    return g;
}

DqElement dq_mul(const DqParams& p, const DqElement& g, const DqElement& h)
{
    require_size(g.a.size(), 2 * p.q(), "left factor");
    require_size(h.a.size(), 2 * p.q(), "right factor");
    const bool a2_zero = std::all_of(h.a.begin(), h.a.end(), [](const Rational& x) { return x == 0; });
    if (!a2_zero && !rotation_trivial(p, g.tau))
        throw InexactPath(fmt::format("e^rho(t) is not the identity at tau = ({}, {})", to_string(g.tau[0]),
                                      to_string(g.tau[1])));
    // l(t1) h2 l(t1)^{-1} = h(z2 - s2 t1^flat, a2, s2)
    auto fl = dq_flat(p, h.s, g.tau);
    auto om = dq_omega(p, g.a, h.a);
    auto ell = dq_ell(p, g.tau, h.tau);
    DqElement out;
    for (int i = 0; i < 2; ++i)
        out.zeta[i] = g.zeta[i] + h.zeta[i] - fl[i] + om[i] / 2 + ell.zeta[i];
    out.a.resize(g.a.size());
    for (std::size_t i = 0; i < g.a.size(); ++i)
        out.a[i] = g.a[i] + h.a[i];
    out.s = g.s + h.s + ell.s;
    out.tau = ell.tau;
    return out;
}

DqElement dq_inverse(const DqParams& p, const DqElement& g)
{
    DqElement hinv = dq_identity(p);
    hinv.zeta = {-g.zeta[0], -g.zeta[1]};
    for (std::size_t i = 0; i < g.a.size(); ++i)
        hinv.a[i] = -g.a[i];
    hinv.s = -g.s;
    return dq_mul(p, dq_l(p, {-g.tau[0], -g.tau[1]}), hinv);
}

DqElement osc2_mul(const DqParams& p, const DqElement& g, const DqElement& h)
{
    if (p.family != Family::Osc2)
        throw ModelMismatch("osc2_mul needs Osc2 parameters");
    if (g.s != 0 || h.s != 0)
        throw ModelMismatch("Osc2 elements have no s coordinate");
    return dq_mul(p, g, h);
}

DqPoint to_point(const DqElement& g)
{
    DqPoint o;
    o.zeta = {to_double(g.zeta[0]), to_double(g.zeta[1])};
    for (const auto& x : g.a)
        o.a.push_back(to_double(x));
    o.s = to_double(g.s);
    o.tau = {to_double(g.tau[0]), to_double(g.tau[1])};
    return o;
}

DqPoint dq_mul(const DqParams& p, const DqPoint& g, const DqPoint& h)
{
    require_size(g.a.size(), 2 * p.q(), "left factor");
    require_size(h.a.size(), 2 * p.q(), "right factor");
    const double au = to_double(p.alpha_unit), fu = to_double(p.flat_unit);
    // e^{rho(t1)} a2
    std::vector<double> ra(h.a.size());
    double om0 = 0, om1 = 0;
    for (int k = 0; k < p.q(); ++k) {
        const double c0 = p.c(k, 0).convert_to<double>(), c1 = p.c(k, 1).convert_to<double>();
        const double th = kTwoPi * (c0 * g.tau[0] + c1 * g.tau[1]);
        const double x = h.a[2 * k], y = h.a[2 * k + 1];
        ra[2 * k] = std::cos(th) * x - std::sin(th) * y;
        ra[2 * k + 1] = std::sin(th) * x + std::cos(th) * y;
        const double w = g.a[2 * k] * ra[2 * k + 1] - g.a[2 * k + 1] * ra[2 * k];
        om0 += c0 * w;
        om1 += c1 * w;
    }
    const double al = au * (g.tau[0] * h.tau[1] - g.tau[1] * h.tau[0]);
    const double m0 = g.tau[0] + h.tau[0] / 2, m1 = g.tau[1] + h.tau[1] / 2;
    DqPoint o;
    o.zeta[0] = g.zeta[0] + h.zeta[0] + fu * h.s * g.tau[1] + om0 / 2 + fu * al * m1 / 3;
    o.zeta[1] = g.zeta[1] + h.zeta[1] - fu * h.s * g.tau[0] + om1 / 2 - fu * al * m0 / 3;
    o.a.resize(g.a.size());
    for (std::size_t i = 0; i < g.a.size(); ++i)
        o.a[i] = g.a[i] + ra[i];
    o.s = g.s + h.s + al / 2;
    o.tau = {g.tau[0] + h.tau[0], g.tau[1] + h.tau[1]};
    return o;
}

DqPoint dq_inverse(const DqParams& p, const DqPoint& g)
{
    DqPoint l, hinv;
    l.a.assign(g.a.size(), 0);
    l.tau = {-g.tau[0], -g.tau[1]};
    hinv.zeta = {-g.zeta[0], -g.zeta[1]};
    for (double x : g.a)
        hinv.a.push_back(-x);
    hinv.s = -g.s;
    return dq_mul(p, l, hinv);
}

double distance(const DqPoint& a, const DqPoint& b)
{
    if (a.a.size() != b.a.size())
        return INFINITY;
    double d = std::max({std::abs(a.zeta[0] - b.zeta[0]), std::abs(a.zeta[1] - b.zeta[1]), std::abs(a.s - b.s),
                         std::abs(a.tau[0] - b.tau[0]), std::abs(a.tau[1] - b.tau[1])});
    for (std::size_t i = 0; i < a.a.size(); ++i)
        d = std::max(d, std::abs(a.a[i] - b.a[i]));
    return d;
}

namespace {

// Element zeta + s + t of the subalgebra z + a_0 + l.
struct Lv {
    std::array<Rational, 2> zeta{};
    Rational s = 0;
    std::array<Rational, 2> t{};
};

Lv operator+(const Lv& x, const Lv& y)
{
    return {{x.zeta[0] + y.zeta[0], x.zeta[1] + y.zeta[1]}, x.s + y.s, {x.t[0] + y.t[0], x.t[1] + y.t[1]}};
}

Lv operator*(const Rational& c, const Lv& x)
{
    return {{c * x.zeta[0], c * x.zeta[1]}, c * x.s, {c * x.t[0], c * x.t[1]}};
}

Lv operator-(const Lv& x, const Lv& y) { return x + Rational(-1) * y; }

// [t, t'] = alpha(t, t'), [t, s] = -s t^flat, z central.
Lv bracket(const DqParams& p, const Lv& x, const Lv& y)
{
    Lv out;
    out.s = dq_alpha(p, x.t, y.t);
    auto a = dq_flat(p, y.s, x.t); // [x.t, y.s] = -a
    auto b = dq_flat(p, x.s, y.t); // [x.s, y.t] = +b
    out.zeta = {b[0] - a[0], b[1] - a[1]};
    return out;
}

Lv bch(const DqParams& p, const Lv& x, const Lv& y)
{
    const Lv xy = bracket(p, x, y);
    return x + y + Rational(1, 2) * xy + Rational(1, 12) * bracket(p, x - y, xy);
}

bool is_zero(const Lv& x)
{
    return x.zeta[0] == 0 && x.zeta[1] == 0 && x.s == 0 && x.t[0] == 0 && x.t[1] == 0;
}

} // namespace

BchReport bch_crosscheck_Ell(const std::array<Rational, 2>& t, const std::array<Rational, 2>& u, const DqParams& p)
{
    BchReport rep;
    rep.t = t;
    rep.u = u;
    rep.closed = dq_ell(p, t, u);

    Lv x, y;
    x.t = t;
    y.t = u;
    const Lv z = bch(p, x, y);
    // exp(z) = exp(w) exp(t'), w in z + a_0: correct w until bch(w, t') = z.
    Lv tl;
    tl.t = z.t;
    Lv w = z - tl;
    for (int it = 0; it < 4; ++it) {
        Lv d = bch(p, w, tl) - z;
        if (is_zero(d))
            break;
        w = w - d;
    }
    rep.bch = dq_identity(p);
    rep.bch.zeta = w.zeta;
    rep.bch.s = w.s;
    rep.bch.tau = z.t;
    rep.equal = is_zero(bch(p, w, tl) - z) && w.t[0] == 0 && w.t[1] == 0 && rep.bch == rep.closed;
    return rep;
}

// ---- lattices -----------------------------------------------------------------

std::string to_string(const LatticeElem& g)
{
    return std::visit([](const auto& x) { return to_string(x); }, g);
}

LatticeElem LatticeModel::identity() const
{
    if (family == Family::Osc1)
        return gamma->identity();
    return dq_identity(params);
}

LatticeElem LatticeModel::mul(const LatticeElem& a, const LatticeElem& b) const
{
    if (family == Family::Osc1)
        return osc1_mul(*gamma, std::get<GammaElem>(a), std::get<GammaElem>(b));
    return dq_mul(params, std::get<DqElement>(a), std::get<DqElement>(b));
}

LatticeElem LatticeModel::inverse(const LatticeElem& a) const
{
    if (family == Family::Osc1)
        return gamma->inverse(std::get<GammaElem>(a));
    return dq_inverse(params, std::get<DqElement>(a));
}

bool LatticeModel::contains(const LatticeElem& g) const
{
    if (family == Family::Osc1) {
        const auto& e = std::get<GammaElem>(g);
        return e.v.size() == gamma->dim() && in_step(e.z, z_step);
    }
    const auto& e = std::get<DqElement>(g);
    if (e.a.size() != static_cast<std::size_t>(2 * params.q()))
        return false;
    for (const auto& x : e.a)
        if (!is_integer(x))
            return false;
    const bool s_ok = s_step == 0 ? e.s == 0 : in_step(e.s, s_step);
    return s_ok && in_step(e.zeta[0], z_step) && in_step(e.zeta[1], z_step) && is_integer(e.tau[0]) &&
           is_integer(e.tau[1]);
}

LatticeModel build_lattice_T1(const IntPoly& f, int q)
{
    LatticeModel lat;
    lat.family = Family::Osc1;
    lat.f = f;
    lat.q = q;
    lat.gamma = std::make_shared<const GammaA>(osc1_compatible_pair(f, q));
    const std::size_t n = lat.gamma->dim();
    lat.z_step = Rational(1, 2);
    lat.lattice = fmt::format("1/2 Z x Z^{} x t'Z", n);
    lat.units = {{"z", "1"}, {"t'", "ln r"}};
    lat.notes = {"A = " + to_string(lat.gamma->base().A), "J = " + to_string(lat.gamma->base().J)};
    GammaElem c = lat.gamma->identity();
    c.z = Rational(1, 2);
    lat.generators.push_back(c);
    lat.names.push_back("c");
    for (std::size_t i = 0; i < n; ++i) {
        lat.generators.push_back(lat.gamma->basis_vector(i));
        lat.names.push_back(fmt::format("e{}", i + 1));
    }
    lat.generators.push_back(lat.gamma->shift());
    lat.names.push_back("t");
    return lat;
}

LatticeModel lattice_T2_from_coords(Family family, const IntMatrix& c)
{
    if (family == Family::Osc1)
        throw PreconditionViolated("Osc1 lattices come from build_lattice_T1");
    if (c.cols() != 2)
        throw PreconditionViolated("mu coordinates need two columns");
    const int q = static_cast<int>(c.rows());
    LatticeModel lat;
    lat.family = family;
    lat.q = q;
    if (family == Family::Osc2) {
        lat.params = osc2_params(c);
        lat.z_step = Rational(1, 2);
        lat.lattice = fmt::format("1/2 Z^2 x Z^{} x Z^2", 2 * q);
        lat.units = {{"z", "sigma_1, sigma_2"}, {"a", "e_k, i e_k"}, {"t", "T_1, T_2"}};
    } else if (q == 0) {
        lat.params = d0_params();
        lat.z_step = Rational(1, 6);
        lat.s_step = Rational(1, 2);
        lat.lattice = "1/6 Z^2 x 1/2 Z x Z^2";
        lat.units = {{"z", "e_1^*, e_2^*"}, {"s", "1"}, {"t", "e_1, e_2"}};
    } else {
        lat.params = dq_params(c);
        lat.z_step = Rational(1, 6);
        lat.s_step = 1;
        lat.lattice = fmt::format("1/6 Z^2 x Z^{} x Z x Z^2", 2 * q);
        lat.units = {{"z", "lambda^2 sigma_i"},
                     {"a", "lambda e_k, lambda i e_k"},
                     {"s", "lambda sqrt(pi/2)"},
                     {"t", "T_1, T_2"},
                     {"lambda", "alpha(T_1, T_2) / sqrt(2 pi)"}};
    }
    const DqParams& p = lat.params;
    auto add = [&](DqElement g, std::string name) {
        lat.generators.emplace_back(std::move(g));
        lat.names.push_back(std::move(name));
    };
    add(dq_h(p, {lat.z_step, 0}, dq_identity(p).a, 0), "z1");
    add(dq_h(p, {0, lat.z_step}, dq_identity(p).a, 0), "z2");
    for (int k = 0; k < 2 * q; ++k) {
        auto a = dq_identity(p).a;
        a[k] = 1;
        add(dq_h(p, {}, a, 0), k % 2 ? fmt::format("ie{}", k / 2 + 1) : fmt::format("e{}", k / 2 + 1));
    }
    if (family == Family::D)
        add(dq_h(p, {}, dq_identity(p).a, lat.s_step), "s");
    add(dq_l(p, {1, 0}), "l1");
    add(dq_l(p, {0, 1}), "l2");
    return lat;
}

LatticeModel build_lattice_T2(const MuSpecT2& mu)
{
    if (mu.family == Family::Osc1)
        throw PreconditionViolated("T2 lattices are for the Osc2 and D families");
    auto dec = decide_T2(mu);
    if (dec.kind != T2Decision::LatticeExists)
        throw NotInLattice(std::string("no lattice of (R^2)* contains mu: ") + dec.detail);
    IntMatrix c(dec.coords.size(), 2);
    for (std::size_t k = 0; k < dec.coords.size(); ++k)
        for (std::size_t j = 0; j < 2; ++j)
            c(k, j) = dec.coords[k][j];
    LatticeModel lat = lattice_T2_from_coords(mu.family, c);
    for (std::size_t i = 0; i < dec.basis.size(); ++i)
        lat.notes.push_back(fmt::format("sigma_{} = ({}, {})", i + 1, to_string(dec.basis[i].x, *mu.basis),
                                        to_string(dec.basis[i].y, *mu.basis)));
    for (const auto& g : lat.generators)
        if (!rotation_trivial(lat.params, std::get<DqElement>(g).tau))
            throw InternalInconsistency("mu_j(T_i) outside 2 pi Z");
    return lat;
}

LatticeModel build_lattice_D0() { return lattice_T2_from_coords(Family::D, IntMatrix(0, 2)); }

LatticeModel corrupt_generator(const LatticeModel& lat, std::size_t index)
{
    if (index >= lat.generators.size())
        throw PreconditionViolated("generator index out of range");
    LatticeModel out = lat;
    const Rational shift = lat.z_step / 3;
    std::visit(
        [&](auto& g) {
            if constexpr (std::is_same_v<std::decay_t<decltype(g)>, GammaElem>)
                g.z += shift;
            else
                g.zeta[0] += shift;
        },
        out.generators[index]);
    return out;
}

namespace {

Integer elem_height(const LatticeElem& g)
{
    Integer h = 0;
    if (auto* e = std::get_if<GammaElem>(&g)) {
        h = std::max(height(e->z), Integer(bmp::abs(e->n)));
        for (const auto& x : e->v)
            h = std::max(h, Integer(bmp::abs(x)));
        return h;
    }
    const auto& e = std::get<DqElement>(g);
    for (const auto* x : {&e.zeta[0], &e.zeta[1], &e.s, &e.tau[0], &e.tau[1]})
        h = std::max(h, height(*x));
    for (const auto& x : e.a)
        h = std::max(h, height(x));
    return h;
}

struct Walker {
    const LatticeModel& lat;
    std::vector<LatticeElem> letters;
    std::vector<std::string> names;
    std::vector<std::size_t> word;
    ClosureReport rep;

    void visit(const LatticeElem& prefix, int depth)
    {
        for (std::size_t i = 0; i < letters.size(); ++i) {
            word.push_back(i);
            LatticeElem g = lat.mul(prefix, letters[i]);
            ++rep.words;
            if (!lat.contains(g)) {
                std::string w;
                for (auto k : word)
                    w += (w.empty() ? "" : " ") + names[k];
                throw ClosureViolation(fmt::format("word '{}' gives {}", w, to_string(g)));
            }
            rep.max_height = std::max(rep.max_height, elem_height(g));
            if (depth + 1 < rep.word_length)
                visit(g, depth + 1);
            word.pop_back();
        }
    }
};

} // namespace

ClosureReport closure_check(const LatticeModel& lat, int word_length)
{
    if (word_length < 1)
        throw PreconditionViolated("word length must be positive");
    Walker w{lat, {}, {}, {}, {}};
    w.rep.word_length = word_length;
    w.rep.generators = lat.generators.size();
    for (std::size_t i = 0; i < lat.generators.size(); ++i) {
        w.letters.push_back(lat.generators[i]);
        w.names.push_back(lat.names[i]);
        w.letters.push_back(lat.inverse(lat.generators[i]));
        w.names.push_back(lat.names[i] + "^-1");
    }
    w.visit(lat.identity(), 0);
    return w.rep;
}

} // namespace cocompact
