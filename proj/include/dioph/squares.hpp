#pragma once

// Representation counts r_k(n): ordered, signed k-tuples of integers whose
// squares sum to n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"
#include "dioph/numtheory.hpp"

namespace dioph {

/// Largest n rk_bruteforce accepts by default.
inline std::uint64_t default_rk_limit(int k) { return k <= 4 ? 10'000'000ULL : 100'000ULL; }

namespace detail {

// r_1 as a table over [0, n].
inline std::vector<std::uint64_t> r1_table(std::uint64_t n) {
    std::vector<std::uint64_t> t(n + 1, 0);
    for (std::uint64_t x = 0; x * x <= n; ++x) t[x * x] += x ? 2 : 1;
    return t;
}

inline std::vector<std::uint64_t> r2_table(std::uint64_t n) {
    std::vector<std::uint64_t> t(n + 1, 0);
    for (std::uint64_t x = 0; x * x <= n; ++x)
        for (std::uint64_t y = 0; x * x + y * y <= n; ++y) t[x * x + y * y] += (x ? 2 : 1) * (y ? 2 : 1);
    return t;
}

// r_{j+1} from r_j by adding one more square.
inline std::vector<std::uint64_t> add_square(const std::vector<std::uint64_t>& prev) {
    const std::uint64_t n = prev.size() - 1;
    std::vector<std::uint64_t> t(n + 1, 0);
    for (std::uint64_t m = 0; m <= n; ++m) {
        if (!prev[m]) continue;
        for (std::uint64_t x = 0; m + x * x <= n; ++x) t[m + x * x] += prev[m] * (x ? 2 : 1);
    }
    return t;
}

inline std::vector<std::uint64_t> rj_table(int j, std::uint64_t n) {
    if (j == 1) return r1_table(n);
    auto t = r2_table(n);
    for (int i = 2; i < j; ++i) t = add_square(t);
    return t;
}

}  // namespace detail

/// Exact r_k(n) by enumeration, for 1 <= k <= 8. Throws BudgetExceeded when
/// n exceeds `limit` (default: 10^7 for k <= 4, 10^5 otherwise).
inline Natural rk_bruteforce(int k, const Natural& n, std::optional<std::uint64_t> limit = std::nullopt) {
    if (k < 1 || k > 8) throw DomainError("rk_bruteforce supports 1 <= k <= 8");
    if (n < 0) throw DomainError("rk_bruteforce needs n >= 0");
    const std::uint64_t cap = limit.value_or(default_rk_limit(k));
    if (n > from_u64(cap))
        throw BudgetExceeded("r_" + std::to_string(k) + "(" + to_string(n) + ") exceeds the enumeration limit " +
                             std::to_string(cap));
    const std::uint64_t m = n.get_ui();
    if (k == 1) return m == 0 ? 1 : (is_square(n) ? 2 : 0);
    if (k == 2) return detail::r2_table(m)[m];
    if (k == 3) {
        auto r2 = detail::r2_table(m);
        std::uint64_t total = 0;
        for (std::uint64_t x = 0; x * x <= m; ++x) total += r2[m - x * x] * (x ? 2 : 1);
        return from_u64(total);
    }
    const int a = k / 2, b = k - a;
    auto ta = detail::rj_table(a, m);
    auto tb = a == b ? ta : detail::rj_table(b, m);
    unsigned __int128 total = 0;
    for (std::uint64_t i = 0; i <= m; ++i) total += static_cast<unsigned __int128>(ta[i]) * tb[m - i];
    return from_u128(total);
}

/// Jacobi: r_4(0) = 1, 8*sigma(n) for odd n, 24*sigma(odd part) for even n.
inline Natural r4(const Natural& n, const FactorOracle& factor = {}) {
    if (n < 0) throw DomainError("r4 needs n >= 0");
    if (n == 0) return 1;
    Natural odd = n;
    unsigned long twos = mpz_scan1(odd.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), twos);
    Natural s = sigma(factor(odd));
    return twos == 0 ? Natural(8 * s) : Natural(24 * s);
}

/// r_3(u^2) for odd u from the factorization of u:
/// 6 * prod over p^a || u of [sigma(p^a) - chi(p) * sigma(p^(a-1))], chi(p) = +1 iff p = 1 mod 4.
inline Natural r3_odd_square(const Factorization& root) {
    Natural r = 6;
    for (const auto& pp : root.factors) {
        if (pp.prime == 2) throw DomainError("r3_odd_square needs an odd root");
        const Natural& p = pp.prime;
        Natural pa = pow_ui(p, pp.exponent);
        Natural term = 1 + (pa * p - p) / (p - 1);
        Natural tail = (pa - 1) / (p - 1);
        const bool chi_plus = mpz_fdiv_ui(p.get_mpz_t(), 4) == 1;
        term += chi_plus ? Natural(-tail) : tail;
        r *= term;
    }
    return r;
}

/// Stripped arguments at most this large are counted by enumeration.
inline constexpr std::uint64_t kR3BruteLimit = 1'000'000;

/// Exact r_3(n). Powers of 4 are stripped (r_3(4m) = r_3(m)); the stripped
/// value is then 7 mod 8 (no representations), small (enumerated), or an odd
/// square (multiplicative formula on the root).
inline Natural r3_exact(const Natural& n, const FactorOracle& factor = {}) {
    if (n < 0) throw DomainError("r3_exact needs n >= 0");
    if (n == 0) return 1;
    Natural m = n;
    unsigned long twos = mpz_scan1(m.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), twos - twos % 2);
    if (mpz_fdiv_ui(m.get_mpz_t(), 8) == 7) return 0;
    if (m <= from_u64(kR3BruteLimit)) return rk_bruteforce(3, m);
    if (mpz_odd_p(m.get_mpz_t()) && is_square(m)) return r3_odd_square(factor(isqrt(m)));
    throw UnsupportedShape("r_3(" + to_string(n) + "): stripped argument is neither small nor an odd square");
}

}  // namespace dioph
