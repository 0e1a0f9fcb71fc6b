#pragma once

#include "cocompact/errors.hpp"
#include "cocompact/numeric.hpp"
#include "cocompact/poly.hpp"

#include <string>
#include <vector>

namespace cocompact {

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            if (row.size() != c_)
                throw PreconditionViolated("ragged matrix literal");
            for (long v : row)
                a_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    friend Matrix operator+(const Matrix& x, const Matrix& y)
    {
        x.same_shape(y);
        Matrix out = x;
        for (std::size_t k = 0; k < out.a_.size(); ++k)
            out.a_[k] += y.a_[k];
        return out;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y)
    {
        x.same_shape(y);
        Matrix out = x;
        for (std::size_t k = 0; k < out.a_.size(); ++k)
            out.a_[k] -= y.a_[k];
        return out;
    }
    friend Matrix operator-(const Matrix& x)
    {
        Matrix out = x;
        for (auto& v : out.a_)
            v = -v;
        return out;
    }
    friend Matrix operator*(const T& s, const Matrix& x)
    {
        Matrix out = x;
        for (auto& v : out.a_)
            v *= s;
        return out;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        if (x.c_ != y.r_)
            throw PreconditionViolated("matrix product shape mismatch");
        Matrix out(x.r_, y.c_);
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t k = 0; k < x.c_; ++k) {
                const T& v = x(i, k);
                if (v == 0)
                    continue;
                for (std::size_t j = 0; j < y.c_; ++j)
                    out(i, j) += v * y(k, j);
            }
        return out;
    }
    std::vector<T> apply(const std::vector<T>& v) const
    {
        if (v.size() != c_)
            throw PreconditionViolated("matrix-vector shape mismatch");
        std::vector<T> out(r_, T(0));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                out[i] += (*this)(i, j) * v[j];
        return out;
    }

    Matrix transpose() const
    {
        Matrix out(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                out(j, i) = (*this)(i, j);
        return out;
    }

    // Non-negative powers only; see inverse() for the rest.
    Matrix pow(unsigned k) const
    {
        Matrix result = identity(r_), base = *this;
        while (k) {
            if (k & 1)
                result = result * base;
            base = base * base;
            k >>= 1;
        }
        return result;
    }

    bool is_zero() const
    {
        for (const auto& v : a_)
            if (v != 0)
                return false;
        return true;
    }

    const std::vector<T>& data() const { return a_; }

private:
    void same_shape(const Matrix& y) const
    {
        if (r_ != y.r_ || c_ != y.c_)
            throw PreconditionViolated("matrix shape mismatch");
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rat(const IntMatrix& m);
// Throws PreconditionViolated if some entry is not an integer.
IntMatrix to_int(const RatMatrix& m);
bool is_integral(const RatMatrix& m);

Integer det(const IntMatrix& m); // fraction-free Bareiss
Rational det(const RatMatrix& m);
// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier.
RatPoly charpoly(const RatMatrix& m);
IntPoly charpoly(const IntMatrix& m);
// p(M) by Horner.
RatMatrix eval(const RatPoly& p, const RatMatrix& m);

// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);
std::size_t rank(const RatMatrix& m);
// Basis of {x : M x = 0}, one vector per column of the result.
std::vector<std::vector<Rational>> nullspace(const RatMatrix& m);
// Throws PreconditionViolated when singular.
RatMatrix inverse(const RatMatrix& m);
// Integer inverse of a unimodular matrix.
IntMatrix inverse_unimodular(const IntMatrix& m);
// Exact powers for any integer exponent (negative ones need det = +-1).
IntMatrix power(const IntMatrix& m, long k);

// Row Hermite normal form: nonzero rows on top, positive pivots, entries
// above each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);

// Basis (as rows) of the Z-module spanned by the given rational vectors.
std::vector<std::vector<Rational>> lattice_basis(const std::vector<std::vector<Rational>>& generators);

IntMatrix companion(const IntPoly& f);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);
Integer content(const IntMatrix& m);

std::string to_string(const IntMatrix& m);
std::string to_string(const RatMatrix& m);

} // namespace cocompact
