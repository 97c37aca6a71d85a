#pragma once

// Slow, obviously-correct references used to cross-check the library.
// Everything here works on int64 and plain loops.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "dioph/eqdsl.hpp"

namespace oracle {

using i64 = std::int64_t;

inline bool holds(const dioph::Equation& e, const std::vector<i64>& x) {
    const i64 a = x[e.i - 1], k = x[e.k - 1];
    switch (e.kind) {
        case dioph::Kind::Sum: return a + x[e.j - 1] == k;
        case dioph::Kind::Product: return a * x[e.j - 1] == k;
        case dioph::Kind::Successor: return a + 1 == k;
    }
    return false;
}

/// Every tuple in [lo, hi]^n satisfying s, in lexicographic order.
inline std::vector<std::vector<i64>> enumerate(const dioph::System& s, i64 lo, i64 hi) {
    std::vector<std::vector<i64>> out;
    const std::size_t n = s.var_count;
    std::vector<i64> x(n, lo);
    if (n == 0) return out;
    while (true) {
        bool ok = true;
        for (const auto& e : s.equations)
            if (!holds(e, x)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
        std::size_t i = n;
        while (i > 0 && x[i - 1] == hi) x[--i] = lo;
        if (i == 0) break;
        ++x[i - 1];
    }
    return out;
}

/// Ordered signed representations of n as a sum of k squares, by recursion.
inline i64 rk(int k, i64 n) {
    if (n < 0) return 0;
    if (k == 0) return n == 0 ? 1 : 0;
    i64 total = 0;
    for (i64 a = 0; a * a <= n; ++a) total += (a == 0 ? 1 : 2) * rk(k - 1, n - a * a);
    return total;
}

inline i64 sigma(i64 n) {
    i64 s = 0;
    for (i64 d = 1; d * d <= n; ++d)
        if (n % d == 0) s += d + (d * d == n ? 0 : n / d);
    return s;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Prime factors with multiplicity, ascending.
inline std::vector<i64> factor(i64 n) {
    std::vector<i64> out;
    for (i64 d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace oracle
