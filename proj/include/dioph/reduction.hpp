#pragma once

// Maps D(x_1..x_n) = 0 to
//   D^2 + (n^2 + x_1^2 + ... + x_n^2 - u_1^2 - ... - u_4^2 - v_1^2 - ... - v_4^2)^2 = 0,
// whose solutions are the roots a of D extended by every (u, v) with
// |u|^2 + |v|^2 = n^2 + |a|^2. Each root therefore contributes r_8 of that
// value, which is larger than the root's height.

#include <cstdint>
#include <string>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/census.hpp"
#include "dioph/errors.hpp"
#include "dioph/polynomial.hpp"
#include "dioph/squares.hpp"

namespace dioph {

/// The sum-of-squares padding: n^2 + sum x_i^2 - sum of the eight appended squares.
inline Polynomial reduction_padding(std::size_t n) {
    const std::size_t total = n + 8;
    Polynomial q = Polynomial::constant(total, Integer(static_cast<unsigned long>(n * n)));
    for (std::size_t i = 1; i <= total; ++i) {
        Polynomial x = Polynomial::variable(total, i);
        if (i <= n) {
            q += x * x;
        } else {
            q -= x * x;
        }
    }
    return q;
}

/// D^2 + padding^2 over n + 8 variables; x_{n+1..n+4} are u_1..u_4, x_{n+5..n+8} are v_1..v_4.
inline Polynomial build_reduced(const Polynomial& d) {
    const std::size_t n = d.vars();
    if (n < 1) throw DomainError("polynomial needs at least one variable");
    Polynomial e = d.extended(n + 8);
    Polynomial q = reduction_padding(n);
    return e * e + q * q;
}

/// Comment header naming the appended variables.
inline std::vector<std::string> reduced_aliases(const Polynomial& d) {
    const std::size_t n = d.vars();
    std::string u, v;
    for (int i = 1; i <= 4; ++i) {
        u += (i > 1 ? ", x" : "x") + std::to_string(n + i) + "=u" + std::to_string(i);
        v += (i > 1 ? ", x" : "x") + std::to_string(n + 4 + i) + "=v" + std::to_string(i);
    }
    return {"reduction of: " + render_poly(d) + " = 0", "aliases: " + u, "aliases: " + v};
}

inline constexpr std::uint64_t kRootSearchLimit = 10'000'000;
inline constexpr std::uint64_t kReducedValueLimit = 100'000;

/// Integer roots of `p` with every coordinate in [-bound, bound], lexicographic order.
/// Exhaustive; supports at most 3 variables.
inline std::vector<Tuple> find_roots(const Polynomial& p, const Integer& bound) {
    const std::size_t n = p.vars();
    if (n > 3) throw DomainError("root search supports at most 3 variables");
    if (bound < 0) throw DomainError("box bound must be >= 0");
    Integer side = 2 * bound + 1;
    if (pow_ui(side, n) > from_u64(kRootSearchLimit))
        throw BudgetExceeded("root search box has more than " + std::to_string(kRootSearchLimit) + " points");
    std::vector<Tuple> roots;
    Tuple v(n, -bound);
    while (true) {
        if (eval_poly(p, v) == 0) roots.push_back(v);
        std::size_t i = n;
        while (i > 0 && v[i - 1] == bound) {
            v[i - 1] = -bound;
            --i;
        }
        if (i == 0) break;
        ++v[i - 1];
    }
    return roots;
}

/// n^2 + sum a_i^2 for a root a.
inline Natural reduced_target(const Tuple& root) {
    Natural t = from_u64(root.size() * root.size());
    for (const auto& a : root) t += a * a;
    return t;
}

/// Number of integer solutions of build_reduced(p), assuming every integer
/// root of p lies inside [-x_box, x_box]^n.
inline Natural count_reduced(const Polynomial& p, const Integer& x_box) {
    Natural total = 0;
    for (const auto& root : find_roots(p, x_box)) {
        Natural target = reduced_target(root);
        if (target > from_u64(kReducedValueLimit))
            throw BudgetExceeded("r_8(" + to_string(target) + ") is beyond the enumeration limit");
        total += rk_bruteforce(8, target);
    }
    return total;
}

struct ReductionReport {
    std::vector<Tuple> roots;
    Natural max_height = 0;  // d: largest height_tuple over the roots
    Natural count = 0;       // solutions of the reduced equation
    bool hypothesis_holds = false;  // some root was found

    bool passed() const { return hypothesis_holds && count > max_height; }
};

inline ReductionReport verify_reduction(const Polynomial& p, const Integer& x_box) {
    ReductionReport rep;
    rep.roots = find_roots(p, x_box);
    rep.hypothesis_holds = !rep.roots.empty();
    if (!rep.hypothesis_holds) return rep;
    for (const auto& r : rep.roots) rep.max_height = std::max(rep.max_height, height_tuple(r));
    rep.count = count_reduced(p, x_box);
    return rep;
}

}  // namespace dioph
