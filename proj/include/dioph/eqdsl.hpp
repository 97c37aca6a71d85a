#pragma once

// Equation systems over x_1..x_n built from three ternary shapes:
//   x_i + x_j = x_k,   x_i * x_j = x_k,   x_i + 1 = x_k.
//
// File format (UTF-8, LF):
//   # comment
//   vars <n>
//   x<i> + x<j> = x<k>
//   x<i> * x<j> = x<k>
//   x<i> + 1 = x<k>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"

namespace dioph {

enum class Kind { Sum, Product, Successor };

/// One equation with 1-based variable indices. `j` is 0 for Successor.
struct Equation {
    Kind kind{Kind::Sum};
    std::size_t i{0};
    std::size_t j{0};
    std::size_t k{0};

    static constexpr Equation sum(std::size_t i, std::size_t j, std::size_t k) { return {Kind::Sum, i, j, k}; }
    static constexpr Equation product(std::size_t i, std::size_t j, std::size_t k) {
        return {Kind::Product, i, j, k};
    }
    static constexpr Equation successor(std::size_t i, std::size_t k) { return {Kind::Successor, i, 0, k}; }

    bool commutative() const noexcept { return kind != Kind::Successor; }

    /// Member of E_n (sum or product shape).
    bool in_E() const noexcept { return kind != Kind::Successor; }

    Equation canonical() const noexcept {
        Equation e = *this;
        if (e.commutative() && e.j < e.i) std::swap(e.i, e.j);
        return e;
    }

    /// Variables that occur in the equation (with repetition).
    std::vector<std::size_t> variables() const {
        if (kind == Kind::Successor) return {i, k};
        return {i, j, k};
    }

    friend auto operator<=>(const Equation&, const Equation&) = default;
};

struct System {
    std::size_t var_count{0};
    std::vector<Equation> equations;

    friend bool operator==(const System&, const System&) = default;
};

inline std::string render_equation(const Equation& e) {
    std::string s = "x" + std::to_string(e.i);
    switch (e.kind) {
        case Kind::Sum: s += " + x" + std::to_string(e.j); break;
        case Kind::Product: s += " * x" + std::to_string(e.j); break;
        case Kind::Successor: s += " + 1"; break;
    }
    s += " = x" + std::to_string(e.k);
    return s;
}

inline std::string render_system(const System& s) {
    std::string out = "vars " + std::to_string(s.var_count) + "\n";
    for (const auto& e : s.equations) out += render_equation(e) + "\n";
    return out;
}

/// Single-line form used in reports: `vars 4; x2 + 1 = x1; ...`.
inline std::string render_system_line(const System& s) {
    std::string out = "vars " + std::to_string(s.var_count);
    for (const auto& e : s.equations) out += "; " + render_equation(e);
    return out;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
        if (end > pos) tokens.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return tokens;
}

inline bool parse_size(std::string_view t, std::size_t& out) {
    if (t.empty() || t.size() > 18) return false;
    std::size_t v = 0;
    for (char c : t) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    out = v;
    return true;
}

inline std::size_t parse_var(std::string_view t, std::size_t line, std::size_t n) {
    std::size_t idx = 0;
    if (t.size() < 2 || t[0] != 'x' || !parse_size(t.substr(1), idx))
        throw ParseError(line, "expected variable x<i>, got '" + std::string(t) + "'");
    if (idx < 1 || idx > n) throw ParseError(line, "index " + std::to_string(idx) + " out of range");
    return idx;
}

}  // namespace detail

/// Parses one equation line against a system of `n` variables.
inline Equation parse_equation(std::string_view text, std::size_t n, std::size_t line = 0) {
    auto tok = detail::split_ws(text);
    if (tok.size() != 5 || tok[3] != "=")
        throw ParseError(line, "expected 'x<i> (+|*) (x<j>|1) = x<k>'");
    std::size_t i = detail::parse_var(tok[0], line, n);
    std::size_t k = detail::parse_var(tok[4], line, n);
    if (tok[1] == "+") {
        if (tok[2] == "1") return Equation::successor(i, k);
        return Equation::sum(i, detail::parse_var(tok[2], line, n), k);
    }
    if (tok[1] == "*") return Equation::product(i, detail::parse_var(tok[2], line, n), k);
    throw ParseError(line, "unknown operator '" + std::string(tok[1]) + "'");
}

inline System parse_system(std::string_view text) {
    System s;
    bool have_vars = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (!have_vars) {
            auto tok = detail::split_ws(line);
            std::size_t n = 0;
            if (tok.size() != 2 || tok[0] != "vars") throw ParseError(line_no, "var_count line 'vars <n>' missing");
            if (!detail::parse_size(tok[1], n) || n < 1) throw ParseError(line_no, "var_count must be a decimal n >= 1");
            s.var_count = n;
            have_vars = true;
        } else {
            s.equations.push_back(parse_equation(line, s.var_count, line_no));
        }
        if (end == text.size()) break;
    }
    if (!have_vars) throw ParseError(0, "var_count line 'vars <n>' missing");
    return s;
}

/// Human-readable violations; empty iff the system is well formed.
inline std::vector<std::string> validate(const System& s) {
    std::vector<std::string> out;
    if (s.var_count < 1) out.push_back("var_count must be >= 1");
    for (std::size_t q = 0; q < s.equations.size(); ++q) {
        for (std::size_t v : s.equations[q].variables()) {
            if (v < 1 || v > s.var_count) {
                out.push_back("equation " + std::to_string(q + 1) + ": index " + std::to_string(v) +
                              " out of range");
            }
        }
    }
    return out;
}

inline void require_valid(const System& s) {
    auto v = validate(s);
    if (!v.empty()) throw DomainError("invalid system: " + v.front());
}

inline bool holds(const Equation& e, const Tuple& v) {
    const Integer& a = v[e.i - 1];
    const Integer& c = v[e.k - 1];
    switch (e.kind) {
        case Kind::Sum: return a + v[e.j - 1] == c;
        case Kind::Product: return a * v[e.j - 1] == c;
        case Kind::Successor: return a + 1 == c;
    }
    return false;
}

inline bool evaluate(const System& s, const Tuple& v) {
    if (v.size() != s.var_count)
        throw DomainError("tuple length " + std::to_string(v.size()) + " does not match var_count " +
                          std::to_string(s.var_count));
    return std::all_of(s.equations.begin(), s.equations.end(), [&](const Equation& e) { return holds(e, v); });
}

/// Commutative operands ordered, equations sorted and deduplicated.
inline System canonical_form(const System& s) {
    System c{s.var_count, {}};
    c.equations.reserve(s.equations.size());
    for (const auto& e : s.equations) c.equations.push_back(e.canonical());
    std::sort(c.equations.begin(), c.equations.end());
    c.equations.erase(std::unique(c.equations.begin(), c.equations.end()), c.equations.end());
    return c;
}

}  // namespace dioph
