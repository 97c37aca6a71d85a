#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <set>

#include "dioph/census.hpp"
#include "dioph/families.hpp"

using namespace dioph;

namespace {

std::string data_dir() {
    const char* d = std::getenv("DIOPH_DATA_DIR");
    return d ? d : "data";
}

}  // namespace

TEST_CASE("b_n by formula") {
    CHECK(b_count(13) == 97);
    CHECK(b_count(14) == 313);
    CHECK(b_count(15) == 4225);
    CHECK(b_count(16) == 1243009);
    CHECK(b_count(17) == Natural("68719476865"));
    CHECK_THROWS_AS(b_count(12), DomainError);
}

TEST_CASE("candidates for x1 in T_n") {
    CHECK(t_candidates(12) == std::vector<Integer>{3, 1, 4, 0});
    CHECK(t_candidates(13) == std::vector<Integer>{3, 1, 4, 0, 6, -2});
    for (std::size_t n = 12; n <= 18; ++n) {
        auto c = t_candidates(n);
        CHECK(c.size() == 2 * ((1UL << (n - 12)) + 1));
        CHECK(std::set<Integer>(c.begin(), c.end()).size() == c.size());
    }
}

TEST_CASE("t_n by formula") {
    CHECK(t_count(12) == 22);
    CHECK(t_count(13) == 80);
    CHECK(t_count(14) == 1832);
    CHECK(t_count(15) == Natural("5428667432"));
    CHECK(t_count(16) == Natural("30850575375685905966330568909861563656"));
}

TEST_CASE("formula counts match the box solver") {
    CHECK(solve_box(gen_B(13), Box::symmetric(13, 8)).solutions.size() == 97);
    CHECK(solve_box(gen_B(14), Box::symmetric(14, 32)).solutions.size() == 313);
    CHECK(solve_box(gen_T(12), Box::symmetric(12, 16)).solutions.size() == 22);
    CHECK(solve_box(gen_T(13), Box::symmetric(13, 64)).solutions.size() == 80);
    // larger boxes add nothing
    CHECK(solve_box(gen_B(13), Box::symmetric(13, 100)).solutions.size() == 97);
    CHECK(solve_box(gen_T(12), Box::symmetric(12, 1000)).solutions.size() == 22);
}

TEST_CASE("ratio rows") {
    auto rows = ratio_table(13, 17, 6);
    REQUIRE(rows.size() == 5);
    CHECK(render_ratio_row(rows[0]) == "n=13 t=80 b=97 ratio≈8.24742e-1");
    CHECK(render_ratio_row(rows[1]) == "n=14 t=1832 b=313 ratio≈5.85304e0");
    CHECK(rows[2].approx == "1.28489e6");
    CHECK(rows[3].approx == "2.48193e31");
    CHECK(rows[4].approx == "5.35896e139");
    CHECK(*rows[0].t < *rows[0].b);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK_FALSE(rows[i].incomplete());
        CHECK(*rows[i].t > *rows[i].b);
    }
    auto threaded = ratio_table(13, 17, 6, {}, 3);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(render_ratio_row(threaded[i]) == render_ratio_row(rows[i]));
    CHECK_THROWS_AS(ratio_table(12, 14, 6), DomainError);
    CHECK_THROWS_AS(ratio_table(15, 14, 6), DomainError);
}

TEST_CASE("an incomplete row is flagged and the others survive") {
    FactorOracle weak{nullptr, 1};
    auto rows = ratio_table(13, 18, 6, weak);
    REQUIRE(rows.size() == 6);
    CHECK_FALSE(rows[0].incomplete());
    CHECK(rows.back().incomplete());
    CHECK(render_ratio_row(rows.back()).find("INCOMPLETE") != std::string::npos);
    CHECK_FALSE(rows.back().error.empty());
}

TEST_CASE("n = 20 lower bound with a factor table") {
    FactorTable table = load_factor_table(data_dir() + "/factor_tables/2p255.txt");
    T20Report rep = t20_check(FactorOracle{&table, 1});
    CHECK(rep.exceeds);
    CHECK(rep.approx == "2.75143e9748");
    CHECK(rep.b20 == 1 + 8 * sigma(*table.find(pow2(255) + 1)) * 3);
}

TEST_CASE("n = 20 without enough factoring effort") {
    try {
        t20_check(FactorOracle{nullptr, 1000});
        FAIL("expected FactorizationIncomplete");
    } catch (const FactorizationIncomplete& e) {
        CHECK(e.cofactor() > 1);
        CHECK_FALSE(is_prime(e.cofactor()));
    }
    CHECK_THROWS_AS(parse_factor_table(to_string(pow2(255) + 1) + " : 3^2 * 11\n"), ValidationError);
}

TEST_CASE("heights") {
    CHECK(height_rational(RationalValue(3, 2)) == 3);
    CHECK(height_rational(RationalValue(0)) == 1);
    CHECK(height_rational(RationalValue(-4, 6)) == 3);
    CHECK(RationalValue(-4, 6) == RationalValue(2, -3));
    CHECK(height_rational(RationalValue(5, -7)) == height_rational(RationalValue(-5, 7)));
    CHECK(height_tuple(std::vector<RationalValue>{RationalValue(1, 2), RationalValue(1, 3)}) == 3);
    CHECK(height_tuple(Tuple(5, 0)) == 5);
    CHECK(height_tuple(make_tuple({4, 3, 2, 2})) == 4);
    CHECK(height_tuple(make_tuple({-9})) == 9);
    CHECK_THROWS_AS(RationalValue(1, 0), DomainError);
}

TEST_CASE("S_n bound and extremal solution") {
    CHECK(s_bound(4) == 4);
    CHECK(s_bound(5) == 36);
    CHECK(s_bound(6) == 104976);
    CHECK(s_max_solution(4) == make_tuple({4, 3, 2, 2}));
    CHECK(s_max_solution(5) == make_tuple({6, 36, 5, 4, 9}));
    for (std::size_t n = 4; n <= 10; ++n) {
        CHECK(evaluate(gen_S(n), s_max_solution(n)));
        CHECK(max_abs(s_max_solution(n)) == s_bound(n));
    }
}

TEST_CASE("S_n height bound for n = 4..6") {
    auto r4 = verify_height_bound(4);
    CHECK(r4.solution_count == 4);
    CHECK(r4.passed());
    CHECK(*r4.max_solution == make_tuple({4, 3, 2, 2}));
    CHECK(r4.outer == 8);
    auto r5 = verify_height_bound(5);
    CHECK(r5.passed());
    CHECK(r5.outer == 72);
    auto r6 = verify_height_bound(6, 3);
    CHECK(r6.passed());
    CHECK(*r6.max_solution == s_max_solution(6));
    CHECK_THROWS_AS(verify_height_bound(7), DomainError);
    CHECK_THROWS_AS(verify_height_bound(4, 1), DomainError);
}
