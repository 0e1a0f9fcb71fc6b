#pragma once

#include "cocompact/criteria.hpp"
#include "cocompact/sympmat.hpp"

#include <array>
#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cocompact {

// ---- Osc_{1,q}(1, mu) ------------------------------------------------------
//
// Abstract model: GammaElem (z, v, n) over a SympPair, law as in GammaA.
// Numeric model: a = (x0, y0, x1, y1, ..., xq, yq) in R^{1,1} + C^q, with
// <a, a'> = -x0 x0' + y0 y0' + sum (xj xj' + yj yj') and L(z0, z1, ...) =
// i(conj z0, mu_1 z1, ...). The product is
//   (z, a, t)(z', a', t') = (z + z' + 1/2 omega(a, e^{tL} a'), a + e^{tL} a', t + t')
// with omega(a, a') = <L a, a'>. The abstract element (z, v, n) goes to
// (z, P v, n t'), t' = ln r, where e^{t'L} P = P A and P^T Omega P = J.

struct Osc1Point {
    double z = 0;
    std::vector<double> a;
    double t = 0;
};

GammaElem osc1_mul(const GammaA& g, const GammaElem& a, const GammaElem& b); // ModelMismatch on size

// A pair (A, J) from build_A_for_theorem1 whose form, restricted to each
// unit-circle eigenspace, has the sign omega has there. J is replaced by
// J p(A + A^{-1}) (made primitive) for a rational p when needed.
SympPair osc1_compatible_pair(const IntPoly& f, int q);

class Osc1Numeric {
public:
    // Throws InternalInconsistency when no real change of basis exists.
    Osc1Numeric(const IntPoly& f, int q, const SympPair& sp);

    int q() const { return q_; }
    std::size_t dim() const { return static_cast<std::size_t>(2 * q_ + 2); }
    double tprime() const { return tprime_; }
    const std::vector<double>& mu() const { return mu_; }
    // Column i is the image of e_i; row-major.
    const std::vector<double>& basis_change() const { return p_; }

    Osc1Point identity() const;
    Osc1Point mul(const Osc1Point& a, const Osc1Point& b) const; // ModelMismatch on size
    Osc1Point inverse(const Osc1Point& a) const;
    std::vector<double> exp_tL(double t, const std::vector<double>& a) const;
    double omega(const std::vector<double>& a, const std::vector<double>& b) const;
    Osc1Point embed(const GammaElem& g) const;

    // Eigenvalues of e^{t'L}.
    std::vector<std::complex<double>> conjugation_eigenvalues() const;
    // max |e^{t'L} P - P A| and max |P^T Omega P - J|.
    double intertwining_residual() const { return res_intertwine_; }
    double form_residual() const { return res_form_; }

private:
    int q_ = 0;
    double tprime_ = 0;
    std::vector<double> mu_;
    std::vector<double> p_;
    double res_intertwine_ = 0, res_form_ = 0;
};

double distance(const Osc1Point& a, const Osc1Point& b); // max-norm over all coordinates

struct EigenvalueCheck {
    bool ok = false;
    std::size_t eigenvalues = 0;
    double max_distance = 0; // from an eigenvalue to the nearest certified box
    std::string detail;
};

// Eigenvalues of e^{t'L} against certified roots of f (x-1)^{2(q-qbar)},
// multiplicities included; boxes are widened by slack.
EigenvalueCheck osc1_eigenvalue_check(const Osc1Numeric& m, const IntPoly& f, double slack = 1e-9);

// ---- D_q(mu) and Osc^2_q(mu) ----------------------------------------------
//
// Normalized units: t = tau1 T1 + tau2 T2 with sigma_i(T_j) = 2 pi delta_ij;
// z = u_z (zeta1 sigma1 + zeta2 sigma2); a = u_a sum (x_k e_k + y_k i e_k);
// s = u_s * s. Then
//   alpha(t, t')  = alpha_unit (tau1 tau2' - tau2 tau1') u_s
//   s t^flat      = flat_unit s (-tau2, tau1) u_z
//   omega(a, a')  = sum_k c_k (x_k y_k' - y_k x_k') u_z,  mu_k = c_k . sigma
// and e^{rho(t)} rotates factor k by 2 pi c_k . tau.

struct DqParams {
    Family family = Family::D; // D or Osc2
    IntMatrix c;               // q x 2
    Rational alpha_unit = 0;
    Rational flat_unit = 0;
    int q() const { return static_cast<int>(c.rows()); }
};

// D_q, q >= 1: u_z = lambda^2, u_a = lambda, u_s = lambda sqrt(pi/2) with
// lambda = alpha(T1, T2) / sqrt(2 pi). Since alpha(T1, T2) = lambda sqrt(2 pi)
// = 2 u_s, alpha_unit = 2; t^flat = alpha(t, .) = (lambda / sqrt(2 pi)) (-tau2, tau1)
// and u_s (lambda / sqrt(2 pi)) = lambda^2 / 2, so flat_unit = 1/2.
DqParams dq_params(const IntMatrix& c);
// D_0 with T_i = e_i, alpha(T1, T2) = 1 and unscaled units.
DqParams d0_params();
// Osc^2: u_z = u_a = 1, no s and no alpha.
DqParams osc2_params(const IntMatrix& c);

struct DqElement {
    std::array<Rational, 2> zeta{};
    std::vector<Rational> a;
    Rational s = 0;
    std::array<Rational, 2> tau{};
    friend bool operator==(const DqElement&, const DqElement&) = default;
};

std::string to_string(const DqElement& g);

DqElement dq_identity(const DqParams& p);
DqElement dq_h(const DqParams& p, std::array<Rational, 2> zeta, std::vector<Rational> a, Rational s);
DqElement dq_l(const DqParams& p, std::array<Rational, 2> tau);

Rational dq_alpha(const DqParams& p, const std::array<Rational, 2>& t, const std::array<Rational, 2>& u);
std::array<Rational, 2> dq_flat(const DqParams& p, const Rational& s, const std::array<Rational, 2>& t);
std::array<Rational, 2> dq_omega(const DqParams& p, const std::vector<Rational>& a, const std::vector<Rational>& b);
// True when c_k . tau is an integer for every k, i.e. e^{rho(t)} = id.
bool rotation_trivial(const DqParams& p, const std::array<Rational, 2>& tau);

// (h1 l(t1))(h2 l(t2)) = h1 (l(t1) h2 l(t1)^{-1}) (l(t1) l(t2)). Exact; throws
// InexactPath when t1 rotates a nonzero a2, ModelMismatch on sizes.
DqElement dq_mul(const DqParams& p, const DqElement& g, const DqElement& h);
DqElement dq_inverse(const DqParams& p, const DqElement& g);
// Same law restricted to Osc^2 (s = 0 throughout).
DqElement osc2_mul(const DqParams& p, const DqElement& g, const DqElement& h);

// l(t) l(t') = h(-1/3 alpha(t, t') (t + t'/2)^flat, 0, alpha(t, t') / 2) l(t + t').
DqElement dq_ell(const DqParams& p, const std::array<Rational, 2>& t, const std::array<Rational, 2>& u);

// Floating model, any t.
struct DqPoint {
    std::array<double, 2> zeta{};
    std::vector<double> a;
    double s = 0;
    std::array<double, 2> tau{};
};

DqPoint to_point(const DqElement& g);
DqPoint dq_mul(const DqParams& p, const DqPoint& g, const DqPoint& h);
DqPoint dq_inverse(const DqParams& p, const DqPoint& g);
double distance(const DqPoint& a, const DqPoint& b);

struct BchReport {
    std::array<Rational, 2> t{}, u{};
    DqElement closed; // from the closed formula
    DqElement bch;    // from truncated BCH, rewritten as h(z, 0, s) l(t)
    bool equal = false;
};

// Degree-3 BCH in the algebra spanned by l, a_0 and z (class 3, so exact).
BchReport bch_crosscheck_Ell(const std::array<Rational, 2>& t, const std::array<Rational, 2>& u,
                             const DqParams& p = dq_params(IntMatrix(0, 2)));

// ---- lattices ----------------------------------------------------------------

using LatticeElem = std::variant<GammaElem, DqElement>;

std::string to_string(const LatticeElem& g);

struct LatticeModel {
    Family family = Family::Osc1;
    std::string lattice; // e.g. "1/2 Z x Z^4 x t'Z"
    std::vector<std::pair<std::string, std::string>> units;
    std::vector<std::string> notes;

    // Osc1
    IntPoly f;
    int q = 0;
    std::shared_ptr<const GammaA> gamma;
    // Osc2 / D
    DqParams params;

    // z in z_step Z^k, s in s_step Z, all other coordinates integral.
    Rational z_step = 0, s_step = 0;

    std::vector<LatticeElem> generators;
    std::vector<std::string> names;

    LatticeElem identity() const;
    LatticeElem mul(const LatticeElem& a, const LatticeElem& b) const;
    LatticeElem inverse(const LatticeElem& a) const;
    bool contains(const LatticeElem& g) const;
};

// 1/2 Z x Lambda x t'Z over osc1_compatible_pair(f, q).
LatticeModel build_lattice_T1(const IntPoly& f, int q);
// Throws NotInLattice unless decide_T2 finds a lattice.
LatticeModel build_lattice_T2(const MuSpecT2& mu);
// From integer coordinates of mu in a lattice basis of (R^2)*.
LatticeModel lattice_T2_from_coords(Family family, const IntMatrix& c);
LatticeModel build_lattice_D0();

// Generator index shifted in z by z_step / 3 (negative control).
LatticeModel corrupt_generator(const LatticeModel& lat, std::size_t index);

inline constexpr int kClosureLengthT1 = 4;
inline constexpr int kClosureLengthT2 = 3;

struct ClosureReport {
    int word_length = 0;
    std::size_t generators = 0;
    long words = 0; // nonempty words checked
    long violations = 0;
    Integer max_height = 0; // max(|num|, den) over all coordinates
};

// Every product of at most word_length generators and inverses must be a
// member; the first that is not raises ClosureViolation naming the word.
ClosureReport closure_check(const LatticeModel& lat, int word_length);

} // namespace cocompact
