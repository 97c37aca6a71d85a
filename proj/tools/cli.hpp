#pragma once

// Command-line front end. run() takes the argument vector (without the
// program name) and writes to the given streams, so tests can drive it
// in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dioph/dioph.hpp"

namespace dioph::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFactorIncomplete = 2, kBudget = 3 };

namespace detail {

inline constexpr const char* kSystemFormat = R"(System file:
  vars <n>
  x<i> + x<j> = x<k>
  x<i> * x<j> = x<k>
  x<i> + 1 = x<k>
Indices are 1-based and at most n. Lines starting with '#' and blank lines are ignored.)";

inline constexpr const char* kPolyFormat = R"(Polynomial file:
  # optional comment lines
  vars <n>            (optional; defaults to the largest index used)
  3*x1*x2^2 - x3 + 7  (terms joined by + or -, may span several lines))";

inline constexpr const char* kTableFormat = R"(Factor table file, one entry per line:
  <N> : <p1>^<e1> * <p2> * ...
Every entry is checked: the product must equal N and each p must pass the primality test.)";

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

inline Integer parse_big(const std::string& text, const char* what) {
    Integer v;
    if (!parse_integer(text, v)) throw DomainError(std::string(what) + ": not an integer: " + text);
    return v;
}

inline nlohmann::json tuple_json(const Tuple& t) {
    auto arr = nlohmann::json::array();
    for (const auto& v : t) arr.push_back(to_string(v));
    return arr;
}

inline nlohmann::json row_json(const RatioRow& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["t"] = r.t ? nlohmann::json(to_string(*r.t)) : nlohmann::json(nullptr);
    j["b"] = r.b ? nlohmann::json(to_string(*r.b)) : nlohmann::json(nullptr);
    j["ratio"] = r.approx.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.approx);
    j["incomplete"] = r.incomplete();
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

}  // namespace detail

struct Config {
    std::string table_path;
    std::uint64_t rho_budget = kDefaultRhoBudget;
    std::uint64_t node_budget = SolveOptions{}.node_budget;
    unsigned threads = 1;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Integer solution counts and height bounds for small Diophantine systems"};
    app.name("dioph");
    app.require_subcommand(1);
    app.fallthrough();
    app.footer(std::string("Exit codes: 0 ok, 1 usage or input error, 2 factorization incomplete, 3 budget exceeded.\n"
                           "Environment: DIOPH_FACTOR_TABLE, DIOPH_RHO_BUDGET, DIOPH_NODE_BUDGET.\n\n") +
               detail::kTableFormat);

    Config cfg;
    if (const char* t = std::getenv("DIOPH_FACTOR_TABLE")) cfg.table_path = t;
    cfg.rho_budget = env_budget("DIOPH_RHO_BUDGET", cfg.rho_budget);
    cfg.node_budget = env_budget("DIOPH_NODE_BUDGET", cfg.node_budget);
    app.add_option("--table", cfg.table_path, "Factor table file");
    app.add_option("--rho-budget", cfg.rho_budget, "Pollard rho iteration budget")->check(CLI::PositiveNumber);
    app.add_option("--node-budget", cfg.node_budget, "Solver step budget")->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));

    // gen
    auto* gen = app.add_subcommand("gen", "Print the system B_n, T_n or S_n");
    std::string gen_family, gen_out;
    std::size_t gen_n = 0;
    gen->add_option("--family", gen_family)->required()->check(CLI::IsMember({"B", "T", "S"}));
    gen->add_option("--n", gen_n)->required();
    gen->add_option("-o,--output", gen_out, "Write to FILE instead of stdout");
    gen->footer(detail::kSystemFormat);

    // solve
    auto* solve = app.add_subcommand("solve", "Enumerate integer solutions inside a box");
    std::string solve_file, solve_bound;
    std::vector<std::string> solve_annulus;
    bool solve_list = false, solve_positive = false, solve_json = false;
    solve->add_option("--system", solve_file)->required();
    auto* bound_opt = solve->add_option("--bound", solve_bound, "Search [-B, B]^n (or [1, B]^n with --positive)");
    auto* ann_opt = solve->add_option("--annulus", solve_annulus, "Check that no solution has an entry in (B1, B2]")
                        ->expected(2);
    bound_opt->excludes(ann_opt);
    solve->add_flag("--list", solve_list, "Print every solution");
    solve->add_flag("--positive", solve_positive, "Restrict to positive entries");
    solve->add_flag("--json", solve_json);
    solve->footer(detail::kSystemFormat);

    // count
    auto* count = app.add_subcommand("count", "Count the integer solutions of B_n or T_n");
    std::string count_family, count_method = "formula", count_bound;
    std::size_t count_n = 0;
    count->add_option("--family", count_family)->required()->check(CLI::IsMember({"B", "T"}));
    count->add_option("--n", count_n)->required();
    count->add_option("--method", count_method)->check(CLI::IsMember({"formula", "brute"}));
    count->add_option("--bound", count_bound, "Box for --method brute (default: large enough for every solution)");

    // ratio
    auto* ratio = app.add_subcommand("ratio", "Table of t_n, b_n and t_n/b_n");
    std::size_t ratio_from = 13, ratio_to = 17;
    int ratio_digits = 6;
    bool ratio_json = false;
    ratio->add_option("--from", ratio_from)->required();
    ratio->add_option("--to", ratio_to)->required();
    ratio->add_option("--digits", ratio_digits)->check(CLI::PositiveNumber);
    ratio->add_flag("--json", ratio_json);
    ratio->footer("Rows: n=<n> t=<t_n> b=<b_n> ratio≈<d.ddddde<exp>>; unknown values print as ? and the row ends "
                  "with INCOMPLETE.");

    // nt
    auto* nt = app.add_subcommand("nt", "Number-theory helpers: r3, r4, sigma, factor");
    std::string nt_op, nt_arg;
    nt->add_option("op", nt_op)->required()->check(CLI::IsMember({"r3", "r4", "sigma", "factor"}));
    nt->add_option("N", nt_arg)->required();
    nt->footer("factor prints p1^e1 * p2 * ... in ascending order.");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "Rewrite D = 0 so the solution count exceeds the largest root height");
    std::string reduce_poly, reduce_out;
    reduce->add_option("--poly", reduce_poly)->required();
    reduce->add_option("-o,--output", reduce_out);
    reduce->footer(detail::kPolyFormat);

    // verify
    auto* verify = app.add_subcommand("verify", "Check the reduction or the S_n height bound");
    verify->require_subcommand(1);
    verify->fallthrough();
    auto* reduction = verify->add_subcommand("reduction", "Count solutions of the reduced equation");
    reduction->alias("lemma2");
    std::string red_poly, red_box;
    reduction->add_option("--poly", red_poly)->required();
    reduction->add_option("--box", red_box, "Every integer root of D is assumed to lie in [-B, B]^n")->required();
    reduction->footer(detail::kPolyFormat);
    auto* height = verify->add_subcommand("height", "Height bound of S_n for n in [4, 6]");
    height->alias("thm4");
    std::size_t hb_n = 4;
    unsigned long hb_slack = 2;
    height->add_option("--n", hb_n)->required();
    height->add_option("--slack", hb_slack, "Annulus outer radius as a multiple of the bound")->check(CLI::Range(2ul, 1000ul));

    // explore
    auto* explore = app.add_subcommand("explore", "Search small successor/product systems for large positive solutions");
    std::size_t ex_n = 4, ex_max = 2;
    std::string ex_limit;
    bool ex_json = false;
    explore->add_option("--n", ex_n)->required();
    explore->add_option("--max-eqs", ex_max)->required();
    explore->add_option("--limit", ex_limit, "Positive box [1, L] (default 2*(2+2^(2^(n-4)))^(2^(n-4)))");
    explore->add_flag("--json", ex_json);
    explore->footer("Report: <status> | <system> | witnesses=<tuples or ->, then a totals line.");

    // check
    auto* check = app.add_subcommand("check", "Large single computations");
    check->require_subcommand(1);
    check->fallthrough();
    auto* t20 = check->add_subcommand("t20", "Lower bound r_3((2+2^256)^256)/b_20 against 2.75e9748");
    std::string t20_table;
    t20->add_option("--table", t20_table, "Factor table containing 1 + 2^255")->required();
    t20->footer(detail::kTableFormat);

    std::vector<const char*> argv{"dioph"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        for (auto* sub = &app; sub;) {
            auto subs = sub->get_subcommands();
            if (subs.empty()) break;
            sub = subs.front();
            if (sub) err << "see: " << sub->get_name() << " --help\n";
        }
        return kUsage;
    }

    try {
        std::unique_ptr<FactorTable> table;
        std::string table_path = cfg.table_path;
        if (*t20) table_path = t20_table;
        if (!table_path.empty()) table = std::make_unique<FactorTable>(load_factor_table(table_path));
        const FactorOracle oracle{table.get(), cfg.rho_budget};
        SolveOptions opts;
        opts.node_budget = cfg.node_budget;
        opts.threads = cfg.threads;

        if (*gen) {
            System s = gen_family == "B" ? gen_B(gen_n) : gen_family == "T" ? gen_T(gen_n) : gen_S(gen_n);
            detail::write_output(gen_out, render_system(s), out);
            return kOk;
        }

        if (*solve) {
            if (solve_bound.empty() && solve_annulus.empty()) throw DomainError("solve needs --bound or --annulus");
            System s = parse_system(detail::read_file(solve_file));
            if (!solve_annulus.empty()) {
                Integer inner = detail::parse_big(solve_annulus[0], "--annulus");
                Integer outer = detail::parse_big(solve_annulus[1], "--annulus");
                bool empty = annulus_empty(s, inner, outer, opts);
                if (solve_json) {
                    nlohmann::json j{{"annulus_empty", empty}, {"inner", to_string(inner)}, {"outer", to_string(outer)}};
                    out << j.dump() << "\n";
                } else {
                    out << "annulus (" << inner << ", " << outer << "] " << (empty ? "empty" : "non-empty") << "\n";
                }
                return kOk;
            }
            Integer b = detail::parse_big(solve_bound, "--bound");
            Box box = solve_positive ? Box::positive(s.var_count, b) : Box::symmetric(s.var_count, b);
            SolutionSet sols = solve_box(s, box, opts);
            if (solve_json) {
                nlohmann::json j;
                j["count"] = sols.solutions.size();
                if (solve_list) {
                    j["solutions"] = nlohmann::json::array();
                    for (const auto& t : sols.solutions) j["solutions"].push_back(detail::tuple_json(t));
                }
                out << j.dump() << "\n";
            } else {
                out << render_solutions(sols, solve_list);
            }
            return kOk;
        }

        if (*count) {
            const bool is_b = count_family == "B";
            if (count_method == "formula") {
                out << (is_b ? b_count(count_n, oracle) : t_count(count_n, oracle)) << "\n";
                return kOk;
            }
            System s = is_b ? gen_B(count_n) : gen_T(count_n);
            Integer bound;
            if (!count_bound.empty()) {
                bound = detail::parse_big(count_bound, "--bound");
            } else if (is_b) {
                // Generous cover: every entry of a B_n solution is at most (2 + 2^(2^(n-12)))^2.
                bound = pow_ui(2 + pow2_pow2(static_cast<unsigned>(count_n - 12)), 2);
            } else {
                require_at_least(count_n, 12, "t_n");
                const unsigned long e = 1UL << (count_n - 12);
                for (const auto& c : t_candidates(count_n)) bound = std::max<Integer>(bound, pow_ui(abs(c), e));
                bound = std::max<Integer>(bound, 16);
            }
            out << solve_box(s, Box::symmetric(s.var_count, bound), opts).solutions.size() << "\n";
            return kOk;
        }

        if (*ratio) {
            auto rows = ratio_table(ratio_from, ratio_to, ratio_digits, oracle, cfg.threads);
            bool incomplete = false;
            for (const auto& r : rows) {
                out << (ratio_json ? detail::row_json(r).dump() : render_ratio_row(r)) << "\n";
                if (r.incomplete()) {
                    incomplete = true;
                    err << "n=" << r.n << ": " << r.error << "\n";
                }
            }
            return incomplete ? kFactorIncomplete : kOk;
        }

        if (*nt) {
            Integer n = detail::parse_big(nt_arg, "N");
            if (nt_op == "r3") {
                out << r3_exact(n, oracle) << "\n";
            } else {
                if (n < 1) throw DomainError(nt_op + " needs N >= 1");
                if (nt_op == "r4") out << r4(n, oracle) << "\n";
                if (nt_op == "sigma") out << sigma(oracle(n)) << "\n";
                if (nt_op == "factor") out << oracle(n).to_string() << "\n";
            }
            return kOk;
        }

        if (*reduce) {
            Polynomial p = parse_poly(detail::read_file(reduce_poly));
            detail::write_output(reduce_out, render_poly_file(build_reduced(p), reduced_aliases(p)), out);
            return kOk;
        }

        if (*reduction) {
            Polynomial p = parse_poly(detail::read_file(red_poly));
            ReductionReport rep = verify_reduction(p, detail::parse_big(red_box, "--box"));
            out << "roots " << rep.roots.size() << "\n";
            for (const auto& r : rep.roots) out << tuple_to_string(r) << "\n";
            if (!rep.hypothesis_holds) {
                out << "hypothesis violated: no integer root in the box\n";
                return kOk;
            }
            out << "max_height " << rep.max_height << "\n";
            out << "count " << rep.count << "\n";
            out << "verdict " << (rep.passed() ? "pass" : "fail") << "\n";
            return kOk;
        }

        if (*height) {
            HeightBoundReport rep = verify_height_bound(hb_n, hb_slack, opts);
            out << "n " << rep.n << "\n";
            out << "bound " << rep.bound << "\n";
            out << "solutions " << rep.solution_count << "\n";
            out << "positive_solution " << (rep.has_positive ? "yes" : "no") << "\n";
            out << "annulus (" << rep.bound << ", " << rep.outer << "] " << (rep.annulus_empty ? "empty" : "non-empty")
                << "\n";
            out << "max_solution " << (rep.max_solution ? tuple_to_string(*rep.max_solution) : std::string("not unique"))
                << "\n";
            out << "expected " << tuple_to_string(s_max_solution(hb_n)) << "\n";
            out << "verdict " << (rep.passed() ? "pass" : "fail") << "\n";
            return kOk;
        }

        if (*explore) {
            Integer limit = ex_limit.empty() ? Integer(2 * s_bound(ex_n)) : detail::parse_big(ex_limit, "--limit");
            ScanReport rep = scan_systems(ex_n, ex_max, limit, opts);
            if (ex_json) {
                for (const auto& c : rep.results) {
                    if (c.status != Status::WithinBound && c.status != Status::ExceedsBound) continue;
                    nlohmann::json j{{"status", status_name(c.status)}, {"system", render_system_line(c.system)}};
                    j["witnesses"] = nlohmann::json::array();
                    for (const auto& w : c.witnesses) j["witnesses"].push_back(detail::tuple_json(w));
                    out << j.dump() << "\n";
                }
                nlohmann::json totals{{"systems", rep.results.size()},
                                      {"no_solution", rep.count(Status::NoSolution)},
                                      {"within_bound", rep.count(Status::WithinBound)},
                                      {"exceeds_bound", rep.count(Status::ExceedsBound)},
                                      {"likely_infinite", rep.count(Status::LikelyInfinite)},
                                      {"truncated", rep.truncated}};
                if (rep.truncated) totals["truncation"] = rep.truncation_reason;
                out << nlohmann::json{{"totals", totals}}.dump() << "\n";
            } else {
                out << render_scan(rep);
            }
            return rep.truncated ? kBudget : kOk;
        }

        if (*t20) {
            T20Report rep = t20_check(oracle);
            out << "b20 " << rep.b20 << "\n";
            out << "r3_digits " << to_string(rep.r3).size() << "\n";
            out << "ratio_lower_bound≈" << rep.approx << "\n";
            out << "exceeds 2.75e9748 " << (rep.exceeds ? "yes" : "no") << "\n";
            return kOk;
        }
    } catch (const FactorizationIncomplete& e) {
        err << "error: " << e.what() << "\n";
        return kFactorIncomplete;
    } catch (const BudgetExceeded& e) {
        err << "error: budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace dioph::cli
