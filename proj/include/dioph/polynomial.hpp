#pragma once

// Sparse multivariate polynomials with integer coefficients.
//
// Text form: terms joined by `+`/`-`; a term is an optional integer
// coefficient and `*`-separated factors `x<i>[^<e>]`, e.g. `x1^2 - 4` or
// `3*x1*x2^2 - x3 + 7`. A file may start with `#` comments and a
// `vars <n>` line; without it n is the largest index used (at least 1).

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"

namespace dioph {

using Monomial = std::vector<unsigned>;

class Polynomial {
public:
    explicit Polynomial(std::size_t vars = 1) : vars_(vars) {}

    static Polynomial constant(std::size_t vars, const Integer& c) {
        Polynomial p(vars);
        p.add_term(Monomial(vars, 0), c);
        return p;
    }
    static Polynomial variable(std::size_t vars, std::size_t index) {
        if (index < 1 || index > vars) throw DomainError("variable index out of range");
        Polynomial p(vars);
        Monomial m(vars, 0);
        m[index - 1] = 1;
        p.add_term(m, 1);
        return p;
    }

    std::size_t vars() const noexcept { return vars_; }
    const std::map<Monomial, Integer>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Monomial& m, const Integer& c) {
        if (m.size() != vars_) throw DomainError("monomial arity mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, total(m));
        return d;
    }

    /// Same polynomial over more variables (new ones appended).
    Polynomial extended(std::size_t vars) const {
        if (vars < vars_) throw DomainError("cannot shrink variable count");
        Polynomial p(vars);
        for (const auto& [m, c] : terms_) {
            Monomial w = m;
            w.resize(vars, 0);
            p.terms_.emplace(std::move(w), c);
        }
        return p;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial p(a.vars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(a.vars_);
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                p.add_term(m, ca * cb);
            }
        }
        return p;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    static unsigned total(const Monomial& m) {
        unsigned t = 0;
        for (unsigned e : m) t += e;
        return t;
    }

private:
    void check(const Polynomial& o) const {
        if (o.vars_ != vars_) throw DomainError("polynomial variable counts differ");
    }

    std::size_t vars_;
    std::map<Monomial, Integer> terms_;
};

/// Terms in graded lexicographic order (highest degree first, then x1 before x2).
inline std::vector<std::pair<Monomial, Integer>> graded_terms(const Polynomial& p) {
    std::vector<std::pair<Monomial, Integer>> out(p.terms().begin(), p.terms().end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        unsigned da = Polynomial::total(a.first), db = Polynomial::total(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    return out;
}

inline std::string render_poly(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : graded_terms(p)) {
        const bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        Integer mag = abs(c);
        std::string body;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!body.empty()) body += "*";
            body += "x" + std::to_string(i + 1);
            if (m[i] > 1) body += "^" + std::to_string(m[i]);
        }
        if (body.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += body;
        } else {
            out += to_string(mag) + "*" + body;
        }
    }
    return out;
}

/// `# comment` lines, a `vars <n>` line, then the expression.
inline std::string render_poly_file(const Polynomial& p, const std::vector<std::string>& comments = {}) {
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    out += "vars " + std::to_string(p.vars()) + "\n";
    out += render_poly(p) + "\n";
    return out;
}

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

    struct Term {
        Integer coef = 1;
        std::map<std::size_t, unsigned> powers;
    };

    std::vector<Term> parse() {
        std::vector<Term> terms;
        skip();
        int sign = 1;
        if (peek('+') || peek('-')) sign = s_[pos_++] == '-' ? -1 : 1;
        while (true) {
            Term t = term();
            if (sign < 0) t.coef = -t.coef;
            terms.push_back(std::move(t));
            skip();
            if (pos_ == s_.size()) break;
            if (!peek('+') && !peek('-')) fail("expected '+' or '-'");
            sign = s_[pos_++] == '-' ? -1 : 1;
        }
        return terms;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(line_, what + " at column " + std::to_string(pos_ + 1));
    }
    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }
    Term term() {
        Term t;
        do {
            if (peek('x')) {
                ++pos_;
                std::string idx = digits();
                if (idx.size() > 6) fail("variable index too large");
                std::size_t i = std::stoul(idx);
                if (i < 1) fail("variable index must be >= 1");
                unsigned e = 1;
                if (peek('^')) {
                    ++pos_;
                    std::string ex = digits();
                    if (ex.size() > 4) fail("exponent too large");
                    e = static_cast<unsigned>(std::stoul(ex));
                }
                t.powers[i] += e;
            } else {
                t.coef *= Integer(digits());
            }
        } while (peek('*') && ++pos_);
        return t;
    }

    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_poly(std::string_view text) {
    std::size_t declared = 0;
    std::string expr;
    std::size_t expr_line = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
        if (line.empty() || line[0] == '#') continue;
        if (expr.empty() && declared == 0 && line.substr(0, 5) == "vars ") {
            std::string n(line.substr(5));
            if (n.empty() || n.size() > 6 || n.find_first_not_of("0123456789") != std::string::npos || std::stoul(n) < 1)
                throw ParseError(line_no, "var_count must be a decimal n >= 1");
            declared = std::stoul(n);
            continue;
        }
        if (expr_line == 0) expr_line = line_no;
        expr += std::string(line) + " ";
    }
    if (expr.empty()) throw ParseError(line_no, "empty polynomial");
    auto terms = detail::PolyParser(expr, expr_line).parse();
    std::size_t used = 1;
    for (const auto& t : terms)
        for (const auto& [i, e] : t.powers) used = std::max(used, i);
    if (declared && used > declared) throw ParseError(expr_line, "index " + std::to_string(used) + " out of range");
    Polynomial p(declared ? declared : used);
    for (const auto& t : terms) {
        Monomial m(p.vars(), 0);
        for (const auto& [i, e] : t.powers) m[i - 1] += e;
        p.add_term(m, t.coef);
    }
    return p;
}

inline Integer eval_poly(const Polynomial& p, const Tuple& v) {
    if (v.size() != p.vars())
        throw DomainError("arity mismatch: polynomial has " + std::to_string(p.vars()) + " variables, tuple has " +
                          std::to_string(v.size()));
    Integer sum = 0;
    for (const auto& [m, c] : p.terms()) {
        Integer t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) t *= pow_ui(v[i], m[i]);
        sum += t;
    }
    return sum;
}

}  // namespace dioph
