#pragma once

// Exhaustive integer solution search inside a finite box.
//
// Domains are integer intervals. Each equation is compiled into a narrowing
// rule (linear, square, idempotent, zero-or-one, general product), rules run
// to a fixed point, and the search branches on the narrowest open domain
// (lowest index on ties) by splitting it into {lo} and [lo+1, hi]. The
// residual half is propagated before the next split, so bounds-consistent
// rules skip values that cannot be extended (e.g. non-squares).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/eqdsl.hpp"
#include "dioph/errors.hpp"

namespace dioph {

struct Interval {
    Integer lo;
    Integer hi;

    bool empty() const { return lo > hi; }
    bool singleton() const { return lo == hi; }
    bool contains(const Integer& v) const { return lo <= v && v <= hi; }
    Integer width() const { return hi - lo; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

class Box {
public:
    Box() = default;
    explicit Box(std::vector<Interval> domains) : domains_(std::move(domains)) {}

    /// [-bound, bound] for every variable.
    static Box symmetric(std::size_t n, const Integer& bound) {
        return Box(std::vector<Interval>(n, Interval{-bound, bound}));
    }
    /// [1, bound] for every variable.
    static Box positive(std::size_t n, const Integer& bound) {
        return Box(std::vector<Interval>(n, Interval{Integer(1), bound}));
    }

    std::size_t size() const noexcept { return domains_.size(); }
    Interval& operator[](std::size_t v) { return domains_[v]; }
    const Interval& operator[](std::size_t v) const { return domains_[v]; }

    bool empty() const {
        return std::any_of(domains_.begin(), domains_.end(), [](const Interval& d) { return d.empty(); });
    }
    bool contains(const Tuple& t) const {
        if (t.size() != domains_.size()) return false;
        for (std::size_t v = 0; v < t.size(); ++v)
            if (!domains_[v].contains(t[v])) return false;
        return true;
    }

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<Interval> domains_;
};

struct SolveOptions {
    std::uint64_t node_budget = 1'000'000'000ULL;
    unsigned threads = 1;
};

struct SolutionSet {
    std::vector<Tuple> solutions;
    Box box;
    bool complete_within_box = true;
};

namespace detail {

enum class RuleKind { Linear, Square, Idempotent, ZeroOrOne, Product };

struct Rule {
    RuleKind kind;
    // Linear: sum(coef[t] * x[vars[t]]) = constant.
    std::vector<std::size_t> vars;
    std::vector<long> coef;
    long constant = 0;
    // Square: x*x = z -> vars {x, z}; Idempotent: {x}; ZeroOrOne: x*y = x -> {x, y};
    // Product: x*y = z -> {x, y, z}.
};

inline Rule compile(const Equation& e) {
    const std::size_t i = e.i - 1, j = e.j - 1, k = e.k - 1;
    auto linear = [](std::vector<std::pair<std::size_t, long>> terms, long constant) {
        Rule r{RuleKind::Linear, {}, {}, constant};
        std::sort(terms.begin(), terms.end());
        for (const auto& [v, c] : terms) {
            if (!r.vars.empty() && r.vars.back() == v) {
                r.coef.back() += c;
            } else {
                r.vars.push_back(v);
                r.coef.push_back(c);
            }
        }
        for (std::size_t t = r.vars.size(); t-- > 0;) {
            if (r.coef[t] == 0) {
                r.vars.erase(r.vars.begin() + static_cast<long>(t));
                r.coef.erase(r.coef.begin() + static_cast<long>(t));
            }
        }
        return r;
    };
    switch (e.kind) {
        case Kind::Sum: return linear({{i, 1}, {j, 1}, {k, -1}}, 0);
        case Kind::Successor: return linear({{i, 1}, {k, -1}}, -1);
        case Kind::Product:
            if (i == j && j == k) return Rule{RuleKind::Idempotent, {i}, {}, 0};
            if (i == j) return Rule{RuleKind::Square, {i, k}, {}, 0};
            if (i == k) return Rule{RuleKind::ZeroOrOne, {i, j}, {}, 0};
            if (j == k) return Rule{RuleKind::ZeroOrOne, {j, i}, {}, 0};
            return Rule{RuleKind::Product, {i, j, k}, {}, 0};
    }
    return {};
}

// Smallest w >= v with a <= |w| <= b (unbounded above; caller checks hi).
inline Integer next_abs_in(const Integer& v, const Integer& a, const Integer& b) {
    if (v <= -a) return v < -b ? Integer(-b) : v;
    if (v <= a) return a;
    return v;
}

}  // namespace detail

/// Compiled system plus the fixed-point propagation engine.
class Propagator {
public:
    explicit Propagator(const System& s) : system_(s) {
        require_valid(s);
        watchers_.resize(s.var_count);
        for (const auto& e : s.equations) {
            rules_.push_back(detail::compile(e));
            std::size_t id = rules_.size() - 1;
            for (std::size_t v : rules_.back().vars) {
                auto& w = watchers_[v];
                if (w.empty() || w.back() != id) w.push_back(id);
            }
        }
    }

    const System& system() const noexcept { return system_; }

    /// Narrows `box` in place to the fixed point. Returns false iff some domain empties.
    /// `steps` counts rule applications and is checked against `budget`.
    bool run(Box& box, std::atomic<std::uint64_t>& steps, std::uint64_t budget) const {
        if (box.empty()) return false;
        std::deque<std::size_t> queue;
        std::vector<char> queued(rules_.size(), 1);
        for (std::size_t r = 0; r < rules_.size(); ++r) queue.push_back(r);
        std::vector<std::size_t> changed;
        while (!queue.empty()) {
            std::size_t r = queue.front();
            queue.pop_front();
            queued[r] = 0;
            if (steps.fetch_add(1, std::memory_order_relaxed) + 1 > budget)
                throw BudgetExceeded("node budget of " + std::to_string(budget) + " steps exceeded");
            changed.clear();
            if (!apply(rules_[r], box, changed)) return false;
            for (std::size_t v : changed) {
                for (std::size_t w : watchers_[v]) {
                    if (!queued[w]) {
                        queued[w] = 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        return true;
    }

private:
    static bool narrow(Box& box, std::size_t v, const Integer& lo, const Integer& hi, std::vector<std::size_t>& changed) {
        Interval& d = box[v];
        bool moved = false;
        if (lo > d.lo) {
            d.lo = lo;
            moved = true;
        }
        if (hi < d.hi) {
            d.hi = hi;
            moved = true;
        }
        if (moved) changed.push_back(v);
        return !d.empty();
    }

    static bool apply(const detail::Rule& r, Box& box, std::vector<std::size_t>& changed) {
        using detail::RuleKind;
        switch (r.kind) {
            case RuleKind::Linear: return apply_linear(r, box, changed);
            case RuleKind::Square: return apply_square(r.vars[0], r.vars[1], box, changed);
            case RuleKind::Idempotent: return narrow(box, r.vars[0], Integer(0), Integer(1), changed);
            case RuleKind::ZeroOrOne: return apply_zero_or_one(r.vars[0], r.vars[1], box, changed);
            case RuleKind::Product: return apply_product(r.vars[0], r.vars[1], r.vars[2], box, changed);
        }
        return true;
    }

    static bool apply_linear(const detail::Rule& r, Box& box, std::vector<std::size_t>& changed) {
        if (r.vars.empty()) return r.constant == 0;
        // Bounds of each term c*x.
        const std::size_t m = r.vars.size();
        std::vector<Integer> tlo(m), thi(m);
        Integer sum_lo = 0, sum_hi = 0;
        for (std::size_t t = 0; t < m; ++t) {
            const Interval& d = box[r.vars[t]];
            Integer a = d.lo * r.coef[t], b = d.hi * r.coef[t];
            if (a > b) std::swap(a, b);
            tlo[t] = a;
            thi[t] = b;
            sum_lo += a;
            sum_hi += b;
        }
        if (r.constant < sum_lo || r.constant > sum_hi) return false;
        for (std::size_t t = 0; t < m; ++t) {
            // c*x_t = constant - (others)
            Integer rlo = r.constant - (sum_hi - thi[t]);
            Integer rhi = r.constant - (sum_lo - tlo[t]);
            Integer c = r.coef[t];
            Integer lo, hi;
            if (c > 0) {
                lo = ceil_div(rlo, c);
                hi = floor_div(rhi, c);
            } else {
                lo = ceil_div(rhi, c);
                hi = floor_div(rlo, c);
            }
            if (!narrow(box, r.vars[t], lo, hi, changed)) return false;
        }
        return true;
    }

    // x*x = z with x != z.
    static bool apply_square(std::size_t x, std::size_t z, Box& box, std::vector<std::size_t>& changed) {
        {
            const Interval& d = box[x];
            Integer lo, hi;
            if (d.lo >= 0) {
                lo = d.lo * d.lo;
                hi = d.hi * d.hi;
            } else if (d.hi <= 0) {
                lo = d.hi * d.hi;
                hi = d.lo * d.lo;
            } else {
                lo = 0;
                hi = std::max(d.lo * d.lo, d.hi * d.hi);
            }
            if (!narrow(box, z, lo, hi, changed)) return false;
        }
        const Interval& dz = box[z];
        Integer a = dz.lo > 0 ? isqrt_ceil(dz.lo) : Integer(0);
        Integer b = isqrt(dz.hi);
        if (a > b) return false;
        const Interval& d = box[x];
        Integer lo = detail::next_abs_in(d.lo, a, b);
        Integer hi = -detail::next_abs_in(-d.hi, a, b);
        return narrow(box, x, lo, hi, changed);
    }

    // x*y = x with x != y: x = 0 or y = 1.
    static bool apply_zero_or_one(std::size_t x, std::size_t y, Box& box, std::vector<std::size_t>& changed) {
        if (!box[x].contains(0) && !narrow(box, y, Integer(1), Integer(1), changed)) return false;
        if (!box[y].contains(1) && !narrow(box, x, Integer(0), Integer(0), changed)) return false;
        return true;
    }

    // Real hull of {z / y : z in dz, y in dy, y != 0} rounded inward, or nullopt when unbounded.
    static std::optional<Interval> quotient(const Interval& dz, const Interval& dy) {
        const bool z_has_zero = dz.contains(0);
        if (z_has_zero && dy.contains(0)) return std::nullopt;
        std::vector<Interval> parts;
        if (dy.lo <= -1) parts.push_back({dy.lo, std::min(dy.hi, Integer(-1))});
        if (dy.hi >= 1) parts.push_back({std::max(dy.lo, Integer(1)), dy.hi});
        std::optional<Interval> out;
        for (const auto& p : parts) {
            Integer lo, hi;
            bool first = true;
            for (const Integer* zn : {&dz.lo, &dz.hi}) {
                for (const Integer* yd : {&p.lo, &p.hi}) {
                    Integer c = ceil_div(*zn, *yd), f = floor_div(*zn, *yd);
                    if (first || c < lo) lo = c;
                    if (first || f > hi) hi = f;
                    first = false;
                }
            }
            if (!out) {
                out = Interval{lo, hi};
            } else {
                if (lo < out->lo) out->lo = lo;
                if (hi > out->hi) out->hi = hi;
            }
        }
        if (!out) return Interval{Integer(1), Integer(0)};
        return out;
    }

    static bool exclude_zero(Box& box, std::size_t v, std::vector<std::size_t>& changed) {
        Interval& d = box[v];
        if (d.lo == 0) {
            d.lo = 1;
            changed.push_back(v);
        }
        if (d.hi == 0) {
            d.hi = -1;
            changed.push_back(v);
        }
        return !d.empty();
    }

    // x*y = z, all distinct.
    static bool apply_product(std::size_t x, std::size_t y, std::size_t z, Box& box, std::vector<std::size_t>& changed) {
        {
            const Interval& dx = box[x];
            const Interval& dy = box[y];
            Integer p[4] = {dx.lo * dy.lo, dx.lo * dy.hi, dx.hi * dy.lo, dx.hi * dy.hi};
            Integer lo = *std::min_element(p, p + 4), hi = *std::max_element(p, p + 4);
            if (!narrow(box, z, lo, hi, changed)) return false;
        }
        if (!box[z].contains(0)) {
            if (!exclude_zero(box, x, changed) || !exclude_zero(box, y, changed)) return false;
        }
        for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
            auto q = quotient(box[z], box[b]);
            if (q && !narrow(box, a, q->lo, q->hi, changed)) return false;
        }
        return true;
    }

    System system_;
    std::vector<detail::Rule> rules_;
    std::vector<std::vector<std::size_t>> watchers_;
};

/// Fixed point of per-equation narrowing inside `box`. An empty domain in the
/// result marks infeasibility.
inline Box propagate(const System& s, Box box, std::uint64_t budget = SolveOptions{}.node_budget) {
    if (box.size() != s.var_count) throw DomainError("box dimension does not match var_count");
    Propagator p(s);
    std::atomic<std::uint64_t> steps{0};
    if (!p.run(box, steps, budget)) {
        // Normalize: mark the first variable empty so callers can test box.empty().
        bool any = box.empty();
        if (!any && box.size() > 0) box[0] = Interval{Integer(1), Integer(0)};
    }
    return box;
}

namespace detail {

/// Depth-first search; `visit` returns false to stop the whole search.
class Search {
public:
    Search(const Propagator& p, std::atomic<std::uint64_t>& steps, std::uint64_t budget,
           std::atomic<bool>& stop)
        : prop_(p), steps_(steps), budget_(budget), stop_(stop) {}

    static std::optional<std::size_t> branch_var(const Box& b) {
        std::optional<std::size_t> best;
        Integer best_w;
        for (std::size_t v = 0; v < b.size(); ++v) {
            if (b[v].singleton()) continue;
            Integer w = b[v].width();
            if (!best || w < best_w) {
                best = v;
                best_w = std::move(w);
            }
        }
        return best;
    }

    void run(Box box, const std::function<bool(Tuple)>& visit) {
        while (!stop_.load(std::memory_order_relaxed)) {
            if (!prop_.run(box, steps_, budget_)) return;
            auto v = branch_var(box);
            if (!v) {
                Tuple t;
                t.reserve(box.size());
                for (std::size_t i = 0; i < box.size(); ++i) t.push_back(box[i].lo);
                if (!evaluate(prop_.system(), t))
                    throw std::logic_error("box solver produced a non-solution " + tuple_to_string(t));
                if (!visit(std::move(t))) stop_.store(true);
                return;
            }
            if (steps_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_)
                throw BudgetExceeded("node budget of " + std::to_string(budget_) + " steps exceeded");
            Box child = box;
            child[*v].hi = child[*v].lo;
            run(std::move(child), visit);
            box[*v].lo += 1;
        }
    }

private:
    const Propagator& prop_;
    std::atomic<std::uint64_t>& steps_;
    std::uint64_t budget_;
    std::atomic<bool>& stop_;
};

// Splits `root` into disjoint sub-boxes whose union holds every solution.
// Fully assigned boxes are kept as they are (the search re-checks them).
inline std::vector<Box> split_tasks(const Propagator& p, Box root, std::size_t want,
                                    std::atomic<std::uint64_t>& steps, std::uint64_t budget) {
    std::vector<Box> tasks{std::move(root)};
    for (int round = 0; round < 4 && tasks.size() < want; ++round) {
        std::vector<Box> next;
        bool progressed = false;
        for (auto& b : tasks) {
            if (!p.run(b, steps, budget)) continue;
            auto v = Search::branch_var(b);
            if (!v) {
                next.push_back(std::move(b));
                continue;
            }
            progressed = true;
            Box rest = std::move(b);
            while (true) {
                Box child = rest;
                child[*v].hi = child[*v].lo;
                next.push_back(std::move(child));
                rest[*v].lo += 1;
                if (!p.run(rest, steps, budget)) break;
                if (rest[*v].singleton()) {
                    next.push_back(std::move(rest));
                    break;
                }
            }
        }
        tasks = std::move(next);
        if (!progressed) break;
    }
    return tasks;
}

}  // namespace detail

/// Calls `visit` for every solution inside `box` until it returns false.
/// Visiting order is the sequential search order (not sorted).
inline void for_each_solution(const System& s, const Box& box, const std::function<bool(Tuple)>& visit,
                              const SolveOptions& opts = {}) {
    if (box.size() != s.var_count) throw DomainError("box dimension does not match var_count");
    Propagator p(s);
    std::atomic<std::uint64_t> steps{0};
    std::atomic<bool> stop{false};
    detail::Search(p, steps, opts.node_budget, stop).run(box, visit);
}

/// Every integer solution of `s` inside `box`, sorted lexicographically.
/// The result does not depend on `opts.threads`.
inline SolutionSet solve_box(const System& s, const Box& box, const SolveOptions& opts = {}) {
    if (box.size() != s.var_count) throw DomainError("box dimension does not match var_count");
    Propagator p(s);
    std::atomic<std::uint64_t> steps{0};
    std::atomic<bool> stop{false};
    SolutionSet out{{}, box, true};

    if (opts.threads <= 1) {
        detail::Search(p, steps, opts.node_budget, stop).run(box, [&](Tuple t) {
            out.solutions.push_back(std::move(t));
            return true;
        });
    } else {
        auto tasks = detail::split_tasks(p, box, 8 * static_cast<std::size_t>(opts.threads), steps, opts.node_budget);
        std::vector<std::vector<Tuple>> found(tasks.size());
        std::atomic<std::size_t> next{0};
        std::mutex err_mu;
        std::exception_ptr err;
        auto worker = [&] {
            try {
                detail::Search search(p, steps, opts.node_budget, stop);
                for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
                    search.run(tasks[t], [&](Tuple sol) {
                        found[t].push_back(std::move(sol));
                        return true;
                    });
                }
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
                stop.store(true);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < opts.threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
        for (auto& f : found)
            for (auto& t : f) out.solutions.push_back(std::move(t));
    }
    std::sort(out.solutions.begin(), out.solutions.end());
    return out;
}

/// True iff no solution inside the symmetric box `outer` has a coordinate
/// of magnitude greater than `inner`.
inline bool annulus_empty(const System& s, const Integer& inner, const Integer& outer, const SolveOptions& opts = {}) {
    if (inner < 0 || inner >= outer) throw DomainError("annulus needs 0 <= inner < outer");
    for (std::size_t v = 0; v < s.var_count; ++v) {
        for (int side : {1, -1}) {
            Box b = Box::symmetric(s.var_count, outer);
            if (side > 0) {
                b[v].lo = inner + 1;
            } else {
                b[v].hi = -inner - 1;
            }
            bool found = false;
            for_each_solution(
                s, b,
                [&](const Tuple&) {
                    found = true;
                    return false;
                },
                opts);
            if (found) return false;
        }
    }
    return true;
}

/// 1-based indices of variables that occur in no equation.
inline std::set<std::size_t> free_variable_scan(const System& s) {
    std::vector<char> used(s.var_count + 1, 0);
    for (const auto& e : s.equations)
        for (std::size_t v : e.variables())
            if (v >= 1 && v <= s.var_count) used[v] = 1;
    std::set<std::size_t> out;
    for (std::size_t v = 1; v <= s.var_count; ++v)
        if (!used[v]) out.insert(v);
    return out;
}

/// `count <N>` header, then one `(v1, ..., vn)` line per tuple when `list` is set.
inline std::string render_solutions(const SolutionSet& sols, bool list) {
    std::string out = "count " + std::to_string(sols.solutions.size()) + "\n";
    if (list)
        for (const auto& t : sols.solutions) out += tuple_to_string(t) + "\n";
    return out;
}

}  // namespace dioph
