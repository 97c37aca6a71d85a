#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "dioph/explorer.hpp"

using namespace dioph;

TEST_CASE("enumeration") {
    auto none = enumerate_systems(4, 0);
    REQUIRE(none.size() == 1);
    CHECK(none[0].equations.empty());

    auto one = enumerate_systems(4, 1);
    CHECK(one.size() > 1);
    CHECK(one.size() <= 57);
    auto three = enumerate_systems(4, 3);
    const System s4 = canonical_label(gen_S(4));
    CHECK(std::find(three.begin(), three.end(), s4) != three.end());
    CHECK(enumerate_systems(4, 2) == enumerate_systems(4, 2));
    CHECK_THROWS_AS(enumerate_systems(3, 1), DomainError);
    CHECK_THROWS_AS(enumerate_systems(7, 1), DomainError);
}

TEST_CASE("canonical labeling is a relabeling invariant") {
    std::mt19937 rng(31);
    auto universe = universe_U(4);
    std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        System s{4, {}};
        for (int q = 0; q < 3; ++q) s.equations.push_back(universe[pick(rng)]);
        std::vector<std::size_t> perm{1, 2, 3, 4};
        std::shuffle(perm.begin(), perm.end(), rng);
        System r{4, {}};
        for (auto e : s.equations) {
            e.i = perm[e.i - 1];
            if (e.kind != Kind::Successor) e.j = perm[e.j - 1];
            e.k = perm[e.k - 1];
            r.equations.push_back(e);
        }
        CHECK(canonical_label(s) == canonical_label(r));
    }
}

TEST_CASE("classification") {
    auto s4 = classify(gen_S(4), 8);
    CHECK(s4.status == Status::WithinBound);
    CHECK(s4.bound_used == 4);
    CHECK(std::any_of(s4.solutions.begin(), s4.solutions.end(), [](const Tuple& t) { return max_abs(t) == 4; }));

    CHECK(classify(System{4, {}}, 8).status == Status::LikelyInfinite);
    CHECK(classify(System{4, {Equation::product(1, 1, 1)}}, 8).status == Status::LikelyInfinite);
    CHECK(classify(System{4, {Equation::successor(1, 1), Equation::product(2, 3, 4)}}, 8).status ==
          Status::NoSolution);
    // unbounded families without free variables show up past the limit
    CHECK(classify(System{4, {Equation::successor(1, 2), Equation::successor(3, 4)}}, 8).status ==
          Status::LikelyInfinite);
    CHECK_THROWS_AS(classify(gen_S(4), 3), DomainError);
}

TEST_CASE("witnesses satisfy the system and exceed the bound") {
    // x3 = 1, x1 = 2, x4 = 4, x2 = 5: one positive solution, just past the bound 4
    System s{4, {Equation::product(3, 3, 3), Equation::successor(3, 1), Equation::product(1, 1, 4),
                 Equation::successor(4, 2)}};
    auto c = classify(s, 8);
    CHECK(c.status == Status::ExceedsBound);
    REQUIRE_FALSE(c.witnesses.empty());
    for (const auto& w : c.witnesses) {
        CHECK(evaluate(s, w));
        CHECK(std::all_of(w.begin(), w.end(), [](const Integer& v) { return v > 0; }));
        CHECK(max_abs(w) > c.bound_used);
    }
}

TEST_CASE("monotone in the limit") {
    for (const auto& s : enumerate_systems(4, 2)) {
        auto a = classify(s, 8);
        auto b = classify(s, 16);
        if (a.status == Status::ExceedsBound) CHECK(b.status != Status::WithinBound);
        if (a.status == Status::WithinBound) CHECK(b.status != Status::NoSolution);
    }
}

TEST_CASE("scan") {
    auto zero = scan_systems(4, 0, 8);
    REQUIRE(zero.results.size() == 1);
    CHECK(zero.results[0].status == Status::LikelyInfinite);

    auto two = scan_systems(4, 2, 8);
    CHECK_FALSE(two.truncated);
    CHECK(two.count(Status::ExceedsBound) == 0);
    CHECK(two.candidates().empty());

    auto three = scan_systems(4, 3, 8);
    const System s4 = canonical_label(gen_S(4));
    auto it = std::find_if(three.results.begin(), three.results.end(),
                           [&](const ClassifiedSystem& c) { return c.system == s4; });
    REQUIRE(it != three.results.end());
    CHECK(it->status == Status::WithinBound);
    for (const auto* c : three.candidates())
        for (const auto& w : c->witnesses) CHECK(evaluate(c->system, w));

    SolveOptions par;
    par.threads = 3;
    CHECK(render_scan(scan_systems(4, 3, 8, par)) == render_scan(three));
    CHECK(render_scan(zero) == "totals systems=1 no_solution=0 within_bound=0 exceeds_bound=0 likely_infinite=1\n");
}

TEST_CASE("truncated scan") {
    SolveOptions tiny;
    tiny.node_budget = 3;
    auto rep = scan_systems(4, 2, 8, tiny);
    CHECK(rep.truncated);
    CHECK(render_scan(rep).find("TRUNCATED") != std::string::npos);
}
