#pragma once

// Seeded generators for the property tests.

#include "cocompact/poly.hpp"

#include <random>

namespace gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    bool coin() { return uniform(0, 1) == 1; }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

inline long nonzero(Rng& rng, long h)
{
    long v = 0;
    while (v == 0)
        v = rng.uniform(-h, h);
    return v;
}

// Degree exactly deg (zero polynomial when deg < 0).
inline cocompact::IntPoly poly(Rng& rng, long deg, long h)
{
    std::vector<cocompact::Integer> c;
    for (long i = 0; i < deg; ++i)
        c.emplace_back(rng.uniform(-h, h));
    if (deg >= 0)
        c.push_back(nonzero(rng, h));
    return cocompact::IntPoly(c);
}

inline cocompact::IntPoly monic(Rng& rng, long deg, long h)
{
    std::vector<cocompact::Integer> c;
    for (long i = 0; i < deg; ++i)
        c.emplace_back(rng.uniform(-h, h));
    c.emplace_back(1);
    return cocompact::IntPoly(c);
}

// Monic palindromic polynomial of degree 2m.
inline cocompact::IntPoly palindromic(Rng& rng, long m, long h)
{
    std::vector<cocompact::Integer> c(2 * m + 1);
    c[0] = c[2 * m] = 1;
    for (long i = 1; i <= m; ++i)
        c[i] = c[2 * m - i] = rng.uniform(-h, h);
    return cocompact::IntPoly(c);
}

} // namespace gen
