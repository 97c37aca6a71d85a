#pragma once

// Falsification search over systems built from x_i + 1 = x_k and
// x_i * x_j = x_k: enumerate small systems up to variable relabeling, look at
// their positive solutions inside [1, L], and flag any whose solutions go
// past (2 + 2^(2^(n-4)))^(2^(n-4)).
//
// Bounded search cannot establish finiteness, so the statuses only describe
// what the box shows.

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dioph/boxsolver.hpp"
#include "dioph/census.hpp"
#include "dioph/eqdsl.hpp"
#include "dioph/families.hpp"

namespace dioph {

enum class Status { NoSolution, WithinBound, ExceedsBound, LikelyInfinite };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::NoSolution: return "no_solution";
        case Status::WithinBound: return "within_bound";
        case Status::ExceedsBound: return "exceeds_bound";
        case Status::LikelyInfinite: return "likely_infinite";
    }
    return "?";
}

/// Lexicographically smallest canonical form over all relabelings of the variables.
inline System canonical_label(const System& s) {
    const std::size_t n = s.var_count;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    System best = canonical_form(s);
    do {
        System r{n, {}};
        r.equations.reserve(s.equations.size());
        for (const auto& e : s.equations) {
            Equation m = e;
            m.i = perm[e.i - 1];
            if (e.kind != Kind::Successor) m.j = perm[e.j - 1];
            m.k = perm[e.k - 1];
            r.equations.push_back(m);
        }
        r = canonical_form(r);
        if (r.equations < best.equations) best = std::move(r);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Every subset of universe_U(n) with at most `max_eqs` equations, one
/// representative per relabeling class, ordered by one-line rendering.
inline std::vector<System> enumerate_systems(std::size_t n, std::size_t max_eqs) {
    if (n < 4) throw DomainError("explorer needs n >= 4");
    if (n > 6) throw DomainError("explorer relabeling is limited to n <= 6");
    const auto universe = universe_U(n);
    std::set<std::vector<Equation>> seen;
    std::vector<System> out;
    std::vector<std::size_t> pick;
    auto emit = [&] {
        System s{n, {}};
        for (std::size_t idx : pick) s.equations.push_back(universe[idx]);
        System c = canonical_label(s);
        if (seen.insert(c.equations).second) out.push_back(std::move(c));
    };
    // Depth-first over index-increasing combinations.
    auto rec = [&](auto&& self, std::size_t start) -> void {
        emit();
        if (pick.size() == max_eqs) return;
        for (std::size_t i = start; i < universe.size(); ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const System& a, const System& b) {
        return render_system_line(a) < render_system_line(b);
    });
    return out;
}

struct ClassifiedSystem {
    System system;
    Status status = Status::NoSolution;
    std::vector<Tuple> witnesses;  // solutions with an entry above bound_used
    std::vector<Tuple> solutions;  // all solutions in [1, limit] when the status is bound-related
    Natural bound_used;
    Natural limit_used;
};

namespace detail {

inline bool exists_solution(const System& s, const Box& box, const SolveOptions& opts) {
    bool found = false;
    for_each_solution(
        s, box,
        [&](const Tuple&) {
            found = true;
            return false;
        },
        opts);
    return found;
}

}  // namespace detail

/// Classifies the positive solutions of `s` (over n = s.var_count variables) inside [1, limit]:
///  - likely_infinite: a variable occurs in no equation and the rest is solvable, or a
///    solution appears with an entry in (limit, 2*limit];
///  - no_solution: nothing inside [1, limit];
///  - exceeds_bound: some solution has an entry above s_bound(n);
///  - within_bound: otherwise.
inline ClassifiedSystem classify(const System& s, const Integer& limit, const SolveOptions& opts = {}) {
    const std::size_t n = s.var_count;
    if (n < 4) throw DomainError("classify needs n >= 4");
    ClassifiedSystem out;
    out.system = s;
    out.bound_used = s_bound(n);
    out.limit_used = limit;
    if (limit < out.bound_used) throw DomainError("limit must be at least s_bound(n)");

    const auto free = free_variable_scan(s);
    if (!free.empty()) {
        Box restricted = Box::positive(n, limit);
        for (std::size_t v : free) restricted[v - 1] = Interval{Integer(1), Integer(1)};
        out.status = detail::exists_solution(s, restricted, opts) ? Status::LikelyInfinite : Status::NoSolution;
        return out;
    }
    for (std::size_t v = 0; v < n; ++v) {
        Box probe = Box::positive(n, 2 * limit);
        probe[v].lo = limit + 1;
        if (detail::exists_solution(s, probe, opts)) {
            out.status = Status::LikelyInfinite;
            return out;
        }
    }
    out.solutions = solve_box(s, Box::positive(n, limit), opts).solutions;
    if (out.solutions.empty()) {
        out.status = Status::NoSolution;
        return out;
    }
    for (const auto& t : out.solutions)
        if (max_abs(t) > out.bound_used) out.witnesses.push_back(t);
    out.status = out.witnesses.empty() ? Status::WithinBound : Status::ExceedsBound;
    return out;
}

struct ScanReport {
    std::size_t n = 0;
    std::size_t max_eqs = 0;
    Natural limit;
    std::vector<ClassifiedSystem> results;  // in enumeration order
    bool truncated = false;
    std::string truncation_reason;

    std::size_t count(Status s) const {
        return static_cast<std::size_t>(
            std::count_if(results.begin(), results.end(), [&](const ClassifiedSystem& c) { return c.status == s; }));
    }
    std::vector<const ClassifiedSystem*> candidates() const {
        std::vector<const ClassifiedSystem*> out;
        for (const auto& c : results)
            if (c.status == Status::ExceedsBound) out.push_back(&c);
        return out;
    }
};

/// Classifies every system from enumerate_systems(n, max_eqs). A budget
/// failure stops the scan and marks the report truncated.
inline ScanReport scan_systems(std::size_t n, std::size_t max_eqs, const Integer& limit, const SolveOptions& opts = {}) {
    ScanReport rep;
    rep.n = n;
    rep.max_eqs = max_eqs;
    rep.limit = limit;
    const auto systems = enumerate_systems(n, max_eqs);
    std::vector<std::optional<ClassifiedSystem>> slots(systems.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{systems.size()};
    std::string reason;
    std::mutex mu;
    SolveOptions inner = opts;
    inner.threads = 1;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < systems.size();) {
            if (i > first_failure.load()) continue;
            try {
                slots[i] = classify(systems[i], limit, inner);
            } catch (const BudgetExceeded& e) {
                std::lock_guard lock(mu);
                if (i < first_failure.load()) {
                    first_failure.store(i);
                    reason = e.what();
                }
            }
        }
    };
    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    const std::size_t stop = first_failure.load();
    for (std::size_t i = 0; i < stop; ++i) rep.results.push_back(std::move(*slots[i]));
    if (stop < systems.size()) {
        rep.truncated = true;
        rep.truncation_reason = "system " + std::to_string(stop + 1) + " of " + std::to_string(systems.size()) + ": " + reason;
    }
    return rep;
}

/// One line per within_bound / exceeds_bound system, then a totals footer.
inline std::string render_scan(const ScanReport& rep) {
    std::string out;
    for (const auto& c : rep.results) {
        if (c.status != Status::WithinBound && c.status != Status::ExceedsBound) continue;
        out += std::string(status_name(c.status)) + " | " + render_system_line(c.system) + " | witnesses=";
        if (c.witnesses.empty()) {
            out += "-";
        } else {
            for (std::size_t i = 0; i < c.witnesses.size(); ++i) out += (i ? " " : "") + tuple_to_string(c.witnesses[i]);
        }
        out += "\n";
    }
    if (rep.truncated) out += "TRUNCATED " + rep.truncation_reason + "\n";
    out += "totals systems=" + std::to_string(rep.results.size()) +
           " no_solution=" + std::to_string(rep.count(Status::NoSolution)) +
           " within_bound=" + std::to_string(rep.count(Status::WithinBound)) +
           " exceeds_bound=" + std::to_string(rep.count(Status::ExceedsBound)) +
           " likely_infinite=" + std::to_string(rep.count(Status::LikelyInfinite)) + "\n";
    return out;
}

}  // namespace dioph
