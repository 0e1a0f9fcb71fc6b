#pragma once

// Brute-force reducibility oracle: enumerate products g*h of monic integer
// polynomials whose coefficients respect the Mignotte bound
// |g_j| <= C(d, j) * ||p||_2, and record every product landing in the box.

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

// Index of a monic polynomial of degree n with lower coefficients in
// [-h, h]: base-(2h+1) digits, constant term least significant.
inline std::size_t index_of(const std::vector<long>& low, long h)
{
    std::size_t idx = 0;
    for (std::size_t i = low.size(); i-- > 0;)
        idx = idx * (2 * h + 1) + static_cast<std::size_t>(low[i] + h);
    return idx;
}

inline long binom(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// reducible[idx] for all monic degree-n polynomials with coefficients in [-h, h].
inline std::vector<bool> reducible_table(int n, long h, long norm_bound)
{
    std::size_t total = 1;
    for (int i = 0; i < n; ++i)
        total *= static_cast<std::size_t>(2 * h + 1);
    std::vector<bool> red(total, false);

    std::vector<long> low(n);
    // x divides p when the constant term vanishes.
    if (n >= 2) {
        for (std::size_t idx = 0; idx < total; ++idx)
            if (static_cast<long>(idx % (2 * h + 1)) == h)
                red[idx] = true;
    }

    for (int d = 1; d <= n / 2; ++d) {
        const int e = n - d;
        std::vector<long> g(d + 1, 0), hh(e + 1, 0);
        g[d] = 1;
        hh[e] = 1;
        std::vector<long> prod(n + 1);

        auto check = [&] {
            std::fill(prod.begin(), prod.end(), 0);
            for (int i = 0; i <= d; ++i)
                for (int j = 0; j <= e; ++j)
                    prod[i + j] += g[i] * hh[j];
            for (int i = 0; i < n; ++i)
                if (prod[i] < -h || prod[i] > h)
                    return;
            for (int i = 0; i < n; ++i)
                low[i] = prod[i];
            red[index_of(low, h)] = true;
        };

        // Recursive enumeration of h's coefficients 0..e-1.
        auto enum_h = [&](auto&& self, int j) -> void {
            if (j == e) {
                check();
                return;
            }
            long b = binom(e, j) * norm_bound;
            long lo = -b, hi = b;
            if (j == 0) {
                lo = -h;
                hi = h;
            }
            for (long v = lo; v <= hi; ++v) {
                if (j == 0 && (v == 0 || g[0] * v < -h || g[0] * v > h))
                    continue;
                hh[j] = v;
                if (j == e - 1) {
                    long top = g[d - 1] + v; // coefficient of x^(n-1)
                    if (top < -h || top > h)
                        continue;
                }
                if (j == 1 && e >= 2) {
                    long c1 = g[0] * hh[1] + g[1] * hh[0]; // coefficient of x
                    if (c1 < -h || c1 > h)
                        continue;
                }
                self(self, j + 1);
            }
        };
        auto enum_g = [&](auto&& self, int j) -> void {
            if (j == d) {
                enum_h(enum_h, 0);
                return;
            }
            long b = binom(d, j) * norm_bound;
            long lo = -b, hi = b;
            if (j == 0) {
                lo = -h;
                hi = h;
            }
            for (long v = lo; v <= hi; ++v) {
                if (j == 0 && v == 0)
                    continue;
                g[j] = v;
                self(self, j + 1);
            }
        };
        enum_g(enum_g, 0);
    }
    return red;
}

} // namespace oracle
