#include "cocompact/numeric.hpp"
#include "cocompact/errors.hpp"

#include <fmt/format.h>
#include <mpfr.h>

#include <algorithm>
#include <cctype>

namespace cocompact {

Integer floor(const Rational& x)
{
    Integer n = bmp::numerator(x);
    Integer d = bmp::denominator(x);
    Integer q, r;
    bmp::divide_qr(n, d, q, r);
    if (r < 0)
        q -= 1;
    return q;
}

Integer ceil(const Rational& x) { return -floor(-x); }

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

int sign(const Rational& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }
int sign(const Integer& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

bool is_integer(const Rational& x) { return bmp::denominator(x) == 1; }

Integer parse_integer(std::string_view text)
{
    Rational r = parse_rational(text);
    if (!is_integer(r))
        throw SchemaError(fmt::format("expected an integer, got '{}'", text));
    return bmp::numerator(r);
}

Rational parse_rational(std::string_view text)
{
    auto fail = [&] { return SchemaError(fmt::format("malformed rational '{}'", text)); };
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty())
        throw fail();

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (!is_integer(num) || !is_integer(den) || den == 0)
            throw fail();
        return num / den;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
        char c = s[pos];
        if (c == '.') {
            if (seen_point)
                throw fail();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point)
                ++frac_digits;
        } else {
            throw fail();
        }
    }
    if (digits.empty())
        throw fail();
    long exponent = 0;
    if (pos < s.size()) {
        std::string e = s.substr(pos + 1);
        if (e.empty())
            throw fail();
        std::size_t used = 0;
        try {
            exponent = std::stol(e, &used);
        } catch (const std::exception&) {
            throw fail();
        }
        if (used != e.size() || std::abs(exponent) > 100000)
            throw fail();
    }
    Rational value{Integer(digits)};
    long shift = exponent - frac_digits;
    Integer ten_pow = bmp::pow(Integer(10), static_cast<unsigned>(std::abs(shift)));
    if (shift >= 0)
        value *= Rational(ten_pow);
    else
        value /= Rational(ten_pow);
    return negative ? Rational(-value) : value;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x)
{
    if (is_integer(x))
        return bmp::numerator(x).str();
    return bmp::numerator(x).str() + "/" + bmp::denominator(x).str();
}

Rational pow2(long e)
{
    Integer p = Integer(1) << static_cast<unsigned>(std::abs(e));
    return e >= 0 ? Rational(p) : Rational(1) / Rational(p);
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h))
{
    if (lo > hi)
        throw PreconditionViolated("interval with lo > hi");
}

std::optional<int> Interval::certain_sign() const
{
    if (lo > 0)
        return 1;
    if (hi < 0)
        return -1;
    if (lo == 0 && hi == 0)
        return 0;
    return std::nullopt;
}

Interval Interval::abs() const
{
    if (lo >= 0)
        return *this;
    if (hi <= 0)
        return -*this;
    return Interval(Rational(0), std::max(Rational(-lo), hi));
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b)
{
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (b.contains_zero())
        throw PreconditionViolated("interval division by an interval containing zero");
    return a * Interval(Rational(1) / b.hi, Rational(1) / b.lo);
}

Interval operator*(const Rational& c, const Interval& a)
{
    return c >= 0 ? Interval(c * a.lo, c * a.hi) : Interval(c * a.hi, c * a.lo);
}

Interval hull(const Interval& a, const Interval& b)
{
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval square(const Interval& a)
{
    Interval m = a.abs();
    return {m.lo * m.lo, m.hi * m.hi};
}

std::string to_string(const Interval& x)
{
    return "[" + to_string(x.lo) + ", " + to_string(x.hi) + "]";
}

namespace certified {
namespace {

class Mpfr {
public:
    explicit Mpfr(int bits) { mpfr_init2(v_, std::max(bits, 16)); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

    Rational to_rational()
    {
        if (!mpfr_number_p(v_))
            throw InternalInconsistency("non-finite MPFR result in certified bound");
        if (mpfr_zero_p(v_))
            return Rational(0);
        Integer m;
        mpfr_exp_t e = mpfr_get_z_2exp(m.backend().data(), v_);
        return Rational(m) * pow2(static_cast<long>(e));
    }

private:
    mpfr_t v_;
};

void set(Mpfr& out, const Rational& q, mpfr_rnd_t rnd)
{
    mpfr_set_q(out.get(), q.backend().data(), rnd);
}

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// f monotone increasing on [x.lo, x.hi].
Interval increasing(UnaryFn f, const Interval& x, int bits)
{
    Mpfr a(bits), b(bits);
    set(a, x.lo, MPFR_RNDD);
    set(b, x.hi, MPFR_RNDU);
    f(a.get(), a.get(), MPFR_RNDD);
    f(b.get(), b.get(), MPFR_RNDU);
    return {a.to_rational(), b.to_rational()};
}

} // namespace

Interval pi(int bits)
{
    Mpfr a(bits), b(bits);
    mpfr_const_pi(a.get(), MPFR_RNDD);
    mpfr_const_pi(b.get(), MPFR_RNDU);
    return {a.to_rational(), b.to_rational()};
}

Interval sqrt(const Interval& x, int bits)
{
    if (x.lo < 0)
        throw PreconditionViolated("certified sqrt of an interval reaching below zero");
    return increasing(mpfr_sqrt, x, bits);
}

Interval log(const Interval& x, int bits)
{
    if (x.lo <= 0)
        throw PreconditionViolated("certified log of a non-positive interval");
    return increasing(mpfr_log, x, bits);
}

Interval exp(const Interval& x, int bits) { return increasing(mpfr_exp, x, bits); }

Interval acos(const Interval& x, int bits)
{
    if (x.lo < -1 || x.hi > 1)
        throw PreconditionViolated("certified acos outside [-1, 1]");
    // acos is decreasing.
    Mpfr a(bits), b(bits);
    set(a, x.hi, MPFR_RNDU);
    set(b, x.lo, MPFR_RNDD);
    mpfr_acos(a.get(), a.get(), MPFR_RNDD);
    mpfr_acos(b.get(), b.get(), MPFR_RNDU);
    return {a.to_rational(), b.to_rational()};
}

} // namespace certified

} // namespace cocompact
