#pragma once

// Closed-form solution counts of B_n and T_n, the t_n/b_n ratio table,
// heights of rational tuples, and the S_n height-bound verifier.

#include <algorithm>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/boxsolver.hpp"
#include "dioph/decimal.hpp"
#include "dioph/errors.hpp"
#include "dioph/families.hpp"
#include "dioph/numtheory.hpp"
#include "dioph/squares.hpp"

namespace dioph {

/// b_n = 1 + 8 * sigma(2 + 2^(2^(n-12))).
inline Natural b_count(std::size_t n, const FactorOracle& factor = {}) {
    require_at_least(n, 13, "b_n");
    Natural x = 2 + pow2_pow2(static_cast<unsigned>(n - 12));
    return 1 + 8 * sigma(factor(x));
}

/// {2 + 2^k, 2 - 2^k : 0 <= k <= 2^(n-12)}, k ascending, + before -.
inline std::vector<Integer> t_candidates(std::size_t n) {
    require_at_least(n, 12, "t_n");
    const unsigned long top = 1UL << (n - 12);
    std::vector<Integer> out;
    out.reserve(2 * (top + 1));
    for (unsigned long k = 0; k <= top; ++k) {
        Integer p = pow2(k);
        out.push_back(2 + p);
        out.push_back(2 - p);
    }
    return out;
}

/// r_3(c^e) for even e, using r_3(4m) = r_3(m) and the odd-square formula on
/// the odd part of c.
inline Natural r3_of_even_power(const Integer& c, unsigned long e, const FactorOracle& factor) {
    if (e % 2 != 0) throw UnsupportedShape("r3_of_even_power needs an even exponent");
    if (c == 0) return 1;
    Integer w = abs(c);
    mpz_tdiv_q_2exp(w.get_mpz_t(), w.get_mpz_t(), mpz_scan1(w.get_mpz_t(), 0));
    if (w == 1) return 6;
    Natural value = pow_ui(w, e);
    if (value <= from_u64(kR3BruteLimit)) return rk_bruteforce(3, value);
    return r3_odd_square(factor(w).power(e / 2));
}

/// t_n = 1 + sum over t_candidates(n) of r_3(c^(2^(n-12))). Every candidate
/// contributes, including candidates with equal powers (+-6 at n = 14).
inline Natural t_count(std::size_t n, const FactorOracle& factor = {}) {
    require_at_least(n, 12, "t_n");
    Natural total = 1;
    if (n == 12) {
        for (const auto& c : t_candidates(n)) total += r3_exact(c, factor);
        return total;
    }
    const unsigned long e = 1UL << (n - 12);
    for (const auto& c : t_candidates(n)) total += r3_of_even_power(c, e, factor);
    return total;
}

struct RatioRow {
    std::size_t n = 0;
    std::optional<Natural> t;
    std::optional<Natural> b;
    std::string approx;  // empty when incomplete
    std::string error;   // set when a count could not be completed

    bool incomplete() const { return !t || !b; }
};

inline RatioRow ratio_row(std::size_t n, int digits, const FactorOracle& factor) {
    RatioRow row;
    row.n = n;
    try {
        row.t = t_count(n, factor);
        row.b = b_count(n, factor);
        row.approx = decimal_approx(*row.t, *row.b, digits);
    } catch (const FactorizationIncomplete& e) {
        row.error = e.what();
    } catch (const BudgetExceeded& e) {
        row.error = e.what();
    }
    return row;
}

/// Rows n = from..to in ascending order. Rows may be computed concurrently;
/// a failed row is flagged and the others are still produced.
inline std::vector<RatioRow> ratio_table(std::size_t from, std::size_t to, int digits, const FactorOracle& factor = {},
                                         unsigned threads = 1) {
    if (from < 13 || from > to) throw DomainError("ratio_table needs 13 <= from <= to");
    if (digits < 1) throw DomainError("digits must be >= 1");
    std::vector<RatioRow> rows;
    if (threads <= 1) {
        for (std::size_t n = from; n <= to; ++n) rows.push_back(ratio_row(n, digits, factor));
        return rows;
    }
    std::vector<std::future<RatioRow>> pending;
    for (std::size_t n = from; n <= to; ++n)
        pending.push_back(std::async(std::launch::async, [=] { return ratio_row(n, digits, factor); }));
    for (auto& f : pending) rows.push_back(f.get());
    return rows;
}

/// `n=<n> t=<t_n> b=<b_n> ratio≈<approx>`, suffixed ` INCOMPLETE` on failure.
inline std::string render_ratio_row(const RatioRow& r) {
    auto show = [](const std::optional<Natural>& v) { return v ? to_string(*v) : std::string("?"); };
    std::string out = "n=" + std::to_string(r.n) + " t=" + show(r.t) + " b=" + show(r.b) +
                      " ratio≈" + (r.approx.empty() ? "?" : r.approx);
    if (r.incomplete()) out += " INCOMPLETE";
    return out;
}

// ---------------------------------------------------------------------------
// n = 20
// ---------------------------------------------------------------------------

struct T20Report {
    Natural r3;       // r_3((2 + 2^256)^256)
    Natural b20;      // 1 + 8 * sigma(2 + 2^256)
    std::string approx;
    bool exceeds = false;  // r3 / b20 > 2.75e9748
};

/// Lower bound r_3((2 + 2^256)^256) / b_20 for t_20 / b_20, compared with
/// 2.75 * 10^9748. Needs a factorization of 1 + 2^255 (usually from a table).
inline T20Report t20_check(const FactorOracle& factor, int digits = 6) {
    T20Report rep;
    const Integer base = 2 + pow2(256);
    rep.r3 = r3_of_even_power(base, 256, factor);
    rep.b20 = b_count(20, factor);
    rep.approx = decimal_approx(rep.r3, rep.b20, digits);
    const Integer threshold = 275 * pow_ui(10, 9746);
    rep.exceeds = rep.r3 > threshold * rep.b20;
    return rep;
}

// ---------------------------------------------------------------------------
// Heights
// ---------------------------------------------------------------------------

/// p/q in lowest terms with q > 0.
class RationalValue {
public:
    RationalValue(Integer num = 0, Integer den = 1) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw DomainError("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    const Integer& numerator() const noexcept { return num_; }
    const Integer& denominator() const noexcept { return den_; }

    friend bool operator==(const RationalValue&, const RationalValue&) = default;

private:
    Integer num_;
    Integer den_;
};

inline Natural height_rational(const RationalValue& v) {
    return std::max<Natural>(abs(v.numerator()), v.denominator());
}

/// max(length, heights of the entries).
inline Natural height_tuple(const std::vector<RationalValue>& vs) {
    Natural h = from_u64(vs.size());
    for (const auto& v : vs) h = std::max(h, height_rational(v));
    return h;
}

inline Natural height_tuple(const Tuple& vs) {
    Natural h = from_u64(vs.size());
    for (const auto& v : vs) h = std::max<Natural>(h, abs(v));
    return h;
}

// ---------------------------------------------------------------------------
// S_n
// ---------------------------------------------------------------------------

/// (2 + 2^(2^(n-4)))^(2^(n-4)).
inline Natural s_bound(std::size_t n) {
    require_at_least(n, 4, "S_n");
    const unsigned k = static_cast<unsigned>(n - 4);
    if (k > 24) throw DomainError("s_bound: n too large to materialize");
    return pow_ui(2 + pow2_pow2(k), 1UL << k);
}

/// The solution of S_n with the largest entries.
inline Tuple s_max_solution(std::size_t n) {
    require_at_least(n, 4, "S_n");
    const unsigned k = static_cast<unsigned>(n - 4);
    if (k > 24) throw DomainError("s_max_solution: n too large to materialize");
    const unsigned long e = 1UL << k;
    const Integer t = pow2_pow2(k);
    Tuple x(n);
    x[0] = 2 + t;
    for (std::size_t i = 1; i + 3 < n; ++i) x[i] = x[i - 1] * x[i - 1];
    x[n - 3] = 1 + t;
    x[n - 2] = t;
    x[n - 1] = pow_ui(1 + pow2(e - 1), e);
    return x;
}

inline Natural max_abs(const Tuple& t) {
    Natural m = 0;
    for (const auto& v : t) m = std::max<Natural>(m, abs(v));
    return m;
}

struct HeightBoundReport {
    std::size_t n = 0;
    Natural bound;
    Natural outer;
    std::size_t solution_count = 0;
    bool has_positive = false;
    bool annulus_empty = false;
    std::optional<Tuple> max_solution;  // set iff the maximum is attained once
    bool matches_expected = false;

    bool passed() const { return solution_count > 0 && has_positive && annulus_empty && matches_expected; }
};

/// Checks, for S_n with n in [4, 6]: solutions exist inside +-s_bound(n), one
/// is all-positive, none has an entry in (s_bound, slack*s_bound], and the
/// unique solution with the largest entry is s_max_solution(n).
inline HeightBoundReport verify_height_bound(std::size_t n, unsigned long slack = 2, const SolveOptions& opts = {}) {
    if (n < 4 || n > 6) throw DomainError("verify_height_bound supports 4 <= n <= 6");
    if (slack < 2) throw DomainError("slack must be >= 2");
    HeightBoundReport rep;
    rep.n = n;
    rep.bound = s_bound(n);
    rep.outer = rep.bound * slack;
    const System s = gen_S(n);
    const auto sols = solve_box(s, Box::symmetric(n, rep.bound), opts);
    rep.solution_count = sols.solutions.size();
    rep.has_positive = std::any_of(sols.solutions.begin(), sols.solutions.end(), [](const Tuple& t) {
        return std::all_of(t.begin(), t.end(), [](const Integer& v) { return v > 0; });
    });
    rep.annulus_empty = annulus_empty(s, rep.bound, rep.outer, opts);
    Natural best = -1;
    std::size_t attained = 0;
    for (const auto& t : sols.solutions) {
        Natural h = max_abs(t);
        if (h > best) {
            best = h;
            attained = 1;
            rep.max_solution = t;
        } else if (h == best) {
            ++attained;
        }
    }
    if (attained != 1) rep.max_solution.reset();
    rep.matches_expected = rep.max_solution && *rep.max_solution == s_max_solution(n);
    return rep;
}

}  // namespace dioph
