#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "dioph/census.hpp"
#include "dioph/eqdsl.hpp"
#include "dioph/families.hpp"

using namespace dioph;

namespace {

bool subset_of(const System& s, const std::vector<Equation>& universe) {
    std::set<Equation> u(universe.begin(), universe.end());
    return std::all_of(s.equations.begin(), s.equations.end(), [&](const Equation& e) { return u.count(e.canonical()); });
}

}  // namespace

TEST_CASE("B_n layout") {
    System b13 = gen_B(13);
    REQUIRE(b13.equations.size() == 10);
    CHECK(b13.equations.front() == Equation::sum(2, 2, 1));
    CHECK(b13.equations.back() == Equation::sum(2, 1, 13));
    System b14 = gen_B(14);
    REQUIRE(b14.equations.size() == 11);
    CHECK(b14.equations.front() == Equation::product(1, 1, 2));
    CHECK_THROWS_AS(gen_B(12), DomainError);
}

TEST_CASE("T_n layout") {
    System t12 = gen_T(12);
    REQUIRE(t12.equations.size() == 10);
    CHECK(t12.equations.front() == Equation::product(2, 2, 2));
    CHECK(t12.equations[2] == Equation::sum(4, 3, 1));
    CHECK(t12.equations.back() == Equation::sum(11, 12, 1));
    CHECK(evaluate(t12, Tuple(12, 0)));
    System t13 = gen_T(13);
    REQUIRE(t13.equations.size() == 11);
    CHECK(t13.equations.front() == Equation::product(1, 1, 2));
    CHECK_THROWS_AS(gen_T(11), DomainError);
}

TEST_CASE("S_n layout") {
    CHECK(gen_S(4).equations ==
          std::vector<Equation>{Equation::successor(2, 1), Equation::successor(3, 2), Equation::product(3, 4, 1)});
    System s5 = gen_S(5);
    REQUIRE(s5.equations.size() == 4);
    CHECK(s5.equations.front() == Equation::product(1, 1, 2));
    CHECK(evaluate(s5, make_tuple({6, 36, 5, 4, 9})));
    CHECK_THROWS_AS(gen_S(3), DomainError);
}

TEST_CASE("equation counts across n") {
    for (std::size_t n = 13; n <= 30; ++n) CHECK(gen_B(n).equations.size() == n - 3);
    for (std::size_t n = 12; n <= 30; ++n) CHECK(gen_T(n).equations.size() == n - 2);
    for (std::size_t n = 4; n <= 30; ++n) CHECK(gen_S(n).equations.size() == n - 1);
}

TEST_CASE("generated systems are valid, deterministic and sit in their universes") {
    for (std::size_t n = 13; n <= 16; ++n) {
        CHECK(validate(gen_B(n)).empty());
        CHECK(gen_B(n) == gen_B(n));
        CHECK(subset_of(gen_B(n), universe_E(n)));
    }
    for (std::size_t n = 12; n <= 16; ++n) {
        CHECK(validate(gen_T(n)).empty());
        CHECK(gen_T(n) == gen_T(n));
        CHECK(subset_of(gen_T(n), universe_E(n)));
    }
    for (std::size_t n = 4; n <= 8; ++n) {
        CHECK(validate(gen_S(n)).empty());
        CHECK(subset_of(gen_S(n), universe_U(n)));
        CHECK_FALSE(subset_of(gen_S(n), universe_E(n)));
    }
}

TEST_CASE("universe sizes") {
    CHECK(universe_E(1).size() == 2);
    CHECK(universe_E(2).size() == 12);
    CHECK(universe_U(1).size() == 2);
    CHECK(universe_U(2).size() == 10);
    CHECK(universe_U(4).size() == 56);
    for (std::size_t n = 1; n <= 6; ++n) {
        auto e = universe_E(n);
        auto u = universe_U(n);
        CHECK(std::set<Equation>(e.begin(), e.end()).size() == e.size());
        CHECK(std::set<Equation>(u.begin(), u.end()).size() == u.size());
        CHECK(e.size() == n * (n + 1) * n);
        CHECK(u.size() == n * n + n * (n + 1) / 2 * n);
    }
}

TEST_CASE("the largest S_n solution satisfies S_n") {
    for (std::size_t n = 4; n <= 10; ++n) CHECK(evaluate(gen_S(n), s_max_solution(n)));
}
