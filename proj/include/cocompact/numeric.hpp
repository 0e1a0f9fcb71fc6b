#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace cocompact {

namespace bmp = boost::multiprecision;

using Integer = bmp::number<bmp::gmp_int, bmp::et_off>;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;

Integer floor(const Rational& x);
Integer ceil(const Rational& x);
Rational abs(const Rational& x);
int sign(const Rational& x);
int sign(const Integer& x);
bool is_integer(const Rational& x);

// Accepts "12", "-3/4", "0.125", "1e-10", "-2.5E3".
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
// Integers print plainly, everything else as "p/q".
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

// 2^e as an exact rational; e may be negative.
Rational pow2(long e);
double to_double(const Rational& x);

/// Closed interval with exact rational endpoints, lo <= hi.
///
/// All arithmetic is exact, so an operation on intervals that contain the
/// true values yields an interval containing the true result. Transcendental
/// bounds come from the `certified` namespace below.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    Interval(Rational point) : lo(point), hi(std::move(point)) {}
    Interval(Rational l, Rational h);

    static Interval point(const Rational& x) { return Interval(x); }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool is_point() const { return lo == hi; }
    // Sign if the interval excludes zero or is exactly {0}.
    std::optional<int> certain_sign() const;
    Interval abs() const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a);
    friend Interval operator*(const Interval& a, const Interval& b);
    // Requires 0 not in b.
    friend Interval operator/(const Interval& a, const Interval& b);
    friend Interval operator*(const Rational& c, const Interval& a);
    friend bool operator==(const Interval& a, const Interval& b) = default;
};

Interval hull(const Interval& a, const Interval& b);
Interval square(const Interval& a);

std::string to_string(const Interval& x);

namespace certified {

// Enclosures computed with MPFR at `bits` of working precision using
// directed rounding, then converted exactly to rationals.
Interval pi(int bits);
Interval sqrt(const Interval& x, int bits);  // x >= 0
Interval log(const Interval& x, int bits);   // x > 0
Interval exp(const Interval& x, int bits);
Interval acos(const Interval& x, int bits);  // x within [-1, 1]

} // namespace certified

} // namespace cocompact
