#pragma once

#include "cocompact/numeric.hpp"
#include "cocompact/poly.hpp"

#include <vector>

namespace cocompact {

enum class Tri { no, yes, undetermined };

const char* to_string(Tri t);

struct CertifiedRoot {
    Interval re;
    Interval im;
    int multiplicity = 1;
    Tri on_unit_circle = Tri::undetermined;
    Tri is_real = Tri::undetermined;
};

// Isolating intervals of the distinct real roots of p, ascending, each of
// width <= tol. Rational roots hit during bisection come back as points.
std::vector<Interval> isolate_real_roots(const IntPoly& p, const Rational& tol);
// Narrow an isolating interval of a simple root of a squarefree polynomial.
Interval refine_real_root(const IntPoly& squarefree, Interval iv, const Rational& tol);

// Certified boxes around every complex root of p, grouped by multiplicity.
// Order: real roots ascending, then non-real roots by real part with the
// positive imaginary member of each conjugate pair first.
std::vector<CertifiedRoot> isolate_roots(const IntPoly& p, const Rational& tol);

// Monic p of degree <= 16.
bool irreducible_over_Z(const IntPoly& p);

constexpr int kMaxDegree = 16;

namespace detail {

// A root disk: rational center and rigorous upper bound on the radius.
struct RootDisk {
    Rational re;
    Rational im;
    Rational radius;
};

// Disjoint inclusion disks, one per root, for squarefree p of degree >= 1.
// Real roots get centers on the real axis; non-real ones come in exact
// conjugate pairs. Radii are <= max_radius when that is positive.
std::vector<RootDisk> certified_disks(const IntPoly& squarefree, const Rational& max_radius);

} // namespace detail

} // namespace cocompact
