#pragma once

// Generators for the B_n, T_n and S_n systems and the equation universes
// E_n (sum/product shapes) and U_n (successor/product shapes).
//
// Index arithmetic is literal: for small n some of the offsets coincide
// (in T_12, x_{n-11} is x_1) and the equations are emitted as written.

#include <string>
#include <vector>

#include "dioph/eqdsl.hpp"
#include "dioph/errors.hpp"

namespace dioph {

inline void require_at_least(std::size_t n, std::size_t min, const char* family) {
    if (n < min)
        throw DomainError(std::string(family) + " needs n >= " + std::to_string(min) + ", got " + std::to_string(n));
}

/// B_n: n-3 equations, 1 + 8*sigma(2 + 2^(2^(n-12))) integer solutions.
inline System gen_B(std::size_t n) {
    require_at_least(n, 13, "B_n");
    System s{n, {}};
    auto& eq = s.equations;
    for (std::size_t i = 1; i <= n - 13; ++i) eq.push_back(Equation::product(i, i, i + 1));
    eq.push_back(Equation::sum(n - 11, n - 11, 1));
    eq.push_back(Equation::product(n - 11, n - 11, 1));
    eq.push_back(Equation::product(n - 10, n - 10, n - 9));
    eq.push_back(Equation::product(n - 8, n - 8, n - 7));
    eq.push_back(Equation::product(n - 6, n - 6, n - 5));
    eq.push_back(Equation::product(n - 4, n - 4, n - 3));
    eq.push_back(Equation::sum(n - 9, n - 7, n - 2));
    eq.push_back(Equation::sum(n - 5, n - 3, n - 1));
    eq.push_back(Equation::sum(n - 2, n - 1, n));
    eq.push_back(Equation::sum(n - 11, n - 12, n));
    return s;
}

/// T_n: n-2 equations. x_{n-10} is an idempotent switch between the zero
/// solution and the branch where (x_1 - 2) divides x_1^(2^(n-12)).
inline System gen_T(std::size_t n) {
    require_at_least(n, 12, "T_n");
    System s{n, {}};
    auto& eq = s.equations;
    for (std::size_t i = 1; i <= n - 12; ++i) eq.push_back(Equation::product(i, i, i + 1));
    eq.push_back(Equation::product(n - 10, n - 10, n - 10));
    eq.push_back(Equation::sum(n - 10, n - 10, n - 9));
    eq.push_back(Equation::sum(n - 8, n - 9, 1));
    eq.push_back(Equation::product(n - 8, n - 7, n - 11));
    eq.push_back(Equation::product(n - 10, n - 7, n - 7));
    eq.push_back(Equation::product(n - 6, n - 6, n - 5));
    eq.push_back(Equation::product(n - 4, n - 4, n - 3));
    eq.push_back(Equation::product(n - 2, n - 2, n - 1));
    eq.push_back(Equation::sum(n - 5, n - 3, n));
    eq.push_back(Equation::sum(n - 1, n, n - 11));
    return s;
}

/// S_n: n-1 equations, finitely many integer solutions, maximal height
/// (2 + 2^(2^(n-4)))^(2^(n-4)).
inline System gen_S(std::size_t n) {
    require_at_least(n, 4, "S_n");
    System s{n, {}};
    auto& eq = s.equations;
    for (std::size_t i = 1; i <= n - 4; ++i) eq.push_back(Equation::product(i, i, i + 1));
    eq.push_back(Equation::successor(n - 2, 1));
    eq.push_back(Equation::successor(n - 1, n - 2));
    eq.push_back(Equation::product(n - 1, n, n - 3));
    return s;
}

inline std::vector<Equation> universe_E(std::size_t n) {
    require_at_least(n, 1, "E_n");
    std::vector<Equation> out;
    out.reserve(n * (n + 1) * n);
    for (Kind kind : {Kind::Sum, Kind::Product})
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = i; j <= n; ++j)
                for (std::size_t k = 1; k <= n; ++k) out.push_back({kind, i, j, k});
    return out;
}

inline std::vector<Equation> universe_U(std::size_t n) {
    require_at_least(n, 1, "U_n");
    std::vector<Equation> out;
    out.reserve(n * n + n * (n + 1) / 2 * n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i; j <= n; ++j)
            for (std::size_t k = 1; k <= n; ++k) out.push_back(Equation::product(i, j, k));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t k = 1; k <= n; ++k) out.push_back(Equation::successor(i, k));
    return out;
}

}  // namespace dioph
