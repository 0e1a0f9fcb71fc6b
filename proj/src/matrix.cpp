#include "cocompact/matrix.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace cocompact {

RatMatrix to_rat(const IntMatrix& m)
{
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = Rational(m(i, j));
    return out;
}

bool is_integral(const RatMatrix& m)
{
    for (const auto& v : m.data())
        if (!is_integer(v))
            return false;
    return true;
}

IntMatrix to_int(const RatMatrix& m)
{
    if (!is_integral(m))
        throw PreconditionViolated("matrix has non-integer entries");
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = bmp::numerator(m(i, j));
    return out;
}

Integer det(const IntMatrix& m0)
{
    if (!m0.square())
        throw PreconditionViolated("det of a non-square matrix");
    const std::size_t n = m0.rows();
    if (n == 0)
        return 1;
    IntMatrix m = m0;
    Integer prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(p, j));
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sgn * m(n - 1, n - 1);
}

Rational det(const RatMatrix& m0)
{
    if (!m0.square())
        throw PreconditionViolated("det of a non-square matrix");
    RatMatrix m = m0;
    const std::size_t n = m.rows();
    Rational d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(p, j));
            d = -d;
        }
        d *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0)
                continue;
            Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j)
                m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

RatPoly charpoly(const RatMatrix& a)
{
    if (!a.square())
        throw PreconditionViolated("charpoly of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    RatMatrix m(n, n); // M_0 = 0
    const RatMatrix id = RatMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * id;
        RatMatrix am = a * m;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += am(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return RatPoly(c);
}

IntPoly charpoly(const IntMatrix& m) { return to_int(charpoly(to_rat(m))); }

RatMatrix eval(const RatPoly& p, const RatMatrix& m)
{
    RatMatrix acc(m.rows(), m.cols());
    const RatMatrix id = RatMatrix::identity(m.rows());
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        acc = acc * m + *it * id;
    return acc;
}

std::vector<std::size_t> rref(RatMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0)
            ++p;
        if (p == m.rows())
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::swap(m(row, j), m(p, j));
        Rational inv = Rational(1) / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0)
                continue;
            Rational f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const RatMatrix& m)
{
    RatMatrix c = m;
    return rref(c).size();
}

std::vector<std::vector<Rational>> nullspace(const RatMatrix& m)
{
    RatMatrix r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMatrix inverse(const RatMatrix& m)
{
    if (!m.square())
        throw PreconditionViolated("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        throw PreconditionViolated("matrix is singular");
    RatMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = aug(i, n + j);
    return out;
}

IntMatrix inverse_unimodular(const IntMatrix& m)
{
    Integer d = det(m);
    if (d != 1 && d != -1)
        throw PreconditionViolated("matrix is not unimodular (det " + d.str() + ")");
    return to_int(inverse(to_rat(m)));
}

IntMatrix power(const IntMatrix& m, long k)
{
    if (k >= 0)
        return m.pow(static_cast<unsigned>(k));
    return inverse_unimodular(m).pow(static_cast<unsigned>(-k));
}

IntMatrix hermite_normal_form(const IntMatrix& m0)
{
    IntMatrix m = m0;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(m(a, j), m(b, j));
    };
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        // Euclid on the column below r until one nonzero entry remains.
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (m(i, col) != 0 && (best == rows || abs(Rational(m(i, col))) < abs(Rational(m(best, col)))))
                    best = i;
            if (best == rows)
                break;
            swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m(i, col) == 0)
                    continue;
                Integer q = m(i, col) / m(r, col);
                for (std::size_t j = 0; j < cols; ++j)
                    m(i, j) -= q * m(r, j);
                if (m(i, col) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (m(r, col) == 0)
            continue;
        if (m(r, col) < 0)
            for (std::size_t j = 0; j < cols; ++j)
                m(r, j) = -m(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor(Rational(m(i, col), m(r, col)));
            if (q != 0)
                for (std::size_t j = 0; j < cols; ++j)
                    m(i, j) -= q * m(r, j);
        }
        ++r;
    }
    return m;
}

std::vector<std::vector<Rational>> lattice_basis(const std::vector<std::vector<Rational>>& gens)
{
    if (gens.empty())
        return {};
    const std::size_t d = gens[0].size();
    Integer l = 1;
    for (const auto& g : gens) {
        if (g.size() != d)
            throw PreconditionViolated("generators of different lengths");
        for (const auto& v : g)
            l = bmp::lcm(l, Integer(bmp::denominator(v)));
    }
    IntMatrix m(gens.size(), d);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = bmp::numerator(gens[i][j] * Rational(l));
    IntMatrix h = hermite_normal_form(m);
    std::vector<std::vector<Rational>> out;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::vector<Rational> row(d);
        bool nonzero = false;
        for (std::size_t j = 0; j < d; ++j) {
            row[j] = Rational(h(i, j)) / Rational(l);
            nonzero = nonzero || h(i, j) != 0;
        }
        if (nonzero)
            out.push_back(std::move(row));
    }
    return out;
}

IntMatrix companion(const IntPoly& f)
{
    if (!f.is_monic() || f.degree() < 1)
        throw PreconditionViolated("companion needs a monic polynomial of positive degree");
    const std::size_t n = static_cast<std::size_t>(f.degree());
    IntMatrix c(n, n);
    for (std::size_t i = 1; i < n; ++i)
        c(i, i - 1) = 1;
    for (std::size_t i = 0; i < n; ++i)
        c(i, n - 1) = -f.c[i];
    return c;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

Integer content(const IntMatrix& m)
{
    Integer g = 0;
    for (const auto& v : m.data())
        g = bmp::gcd(g, v);
    return g;
}

namespace {

template <class T>
std::string render(const Matrix<T>& m)
{
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j)
            out += (j ? ", " : "") + to_string(m(i, j));
        out += "]";
    }
    return out + "]";
}

} // namespace

std::string to_string(const IntMatrix& m) { return render(m); }
std::string to_string(const RatMatrix& m) { return render(m); }

} // namespace cocompact
