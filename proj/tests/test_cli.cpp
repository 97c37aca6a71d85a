#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = dioph::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data_dir() {
    const char* d = std::getenv("DIOPH_DATA_DIR");
    return d ? d : "data";
}

fs::path scratch(const std::string& name, const std::string& content) {
    fs::path dir = fs::temp_directory_path() / "dioph_cli_test";
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

}  // namespace

TEST_CASE("gen") {
    auto r = call({"gen", "--family", "S", "--n", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "vars 4\nx2 + 1 = x1\nx3 + 1 = x2\nx3 * x4 = x1\n");
    CHECK(call({"gen", "--family", "B", "--n", "12"}).code == 1);
    CHECK(call({"gen", "--family", "Q", "--n", "12"}).code == 1);

    fs::path target = fs::temp_directory_path() / "dioph_cli_test_t12.txt";
    CHECK(call({"gen", "--family", "T", "--n", "12", "-o", target.string()}).code == 0);
    std::ifstream in(target);
    std::string first;
    std::getline(in, first);
    CHECK(first == "vars 12");
}

TEST_CASE("solve") {
    fs::path s4 = scratch("s4.txt", "vars 4\nx2 + 1 = x1\nx3 + 1 = x2\nx3 * x4 = x1\n");
    auto r = call({"solve", "--system", s4.string(), "--bound", "8", "--list"});
    CHECK(r.code == 0);
    CHECK(r.out == "count 4\n(0, -1, -2, 0)\n(1, 0, -1, -1)\n(3, 2, 1, 3)\n(4, 3, 2, 2)\n");
    CHECK(call({"solve", "--system", s4.string(), "--bound", "8", "--positive"}).out == "count 2\n");
    CHECK(call({"solve", "--system", s4.string(), "--annulus", "4", "8"}).out == "annulus (4, 8] empty\n");
    CHECK(call({"solve", "--system", s4.string(), "--annulus", "3", "8"}).out == "annulus (3, 8] non-empty\n");
    CHECK(call({"solve", "--system", s4.string(), "--bound", "8", "--list", "--json"}).out ==
          "{\"count\":4,\"solutions\":[[\"0\",\"-1\",\"-2\",\"0\"],[\"1\",\"0\",\"-1\",\"-1\"],"
          "[\"3\",\"2\",\"1\",\"3\"],[\"4\",\"3\",\"2\",\"2\"]]}\n");

    CHECK(call({"solve", "--system", s4.string()}).code == 1);
    CHECK(call({"solve", "--system", s4.string(), "--bound", "8", "--annulus", "1", "2"}).code == 1);
    CHECK(call({"solve", "--system", "/nonexistent.txt", "--bound", "8"}).code == 1);
    fs::path bad = scratch("bad.txt", "vars 2\nx1 + x3 = x2\n");
    auto e = call({"solve", "--system", bad.string(), "--bound", "8"});
    CHECK(e.code == 1);
    CHECK(e.err.find("line 2") != std::string::npos);
    CHECK(call({"--node-budget", "5", "solve", "--system", s4.string(), "--bound", "100000"}).code == 3);
}

TEST_CASE("count") {
    CHECK(call({"count", "--family", "B", "--n", "13"}).out == "97\n");
    CHECK(call({"count", "--family", "T", "--n", "14", "--method", "formula"}).out == "1832\n");
    CHECK(call({"count", "--family", "B", "--n", "13", "--method", "brute"}).out == "97\n");
    CHECK(call({"count", "--family", "T", "--n", "12", "--method", "brute", "--bound", "16"}).out == "22\n");
    CHECK(call({"count", "--family", "T", "--n", "12", "--method", "brute"}).out == "22\n");
}

TEST_CASE("ratio") {
    auto r = call({"ratio", "--from", "13", "--to", "14"});
    CHECK(r.code == 0);
    CHECK(r.out == "n=13 t=80 b=97 ratio≈8.24742e-1\nn=14 t=1832 b=313 ratio≈5.85304e0\n");
    CHECK(call({"ratio", "--from", "13", "--to", "13", "--digits", "3"}).out == "n=13 t=80 b=97 ratio≈8.25e-1\n");
    CHECK(call({"ratio", "--from", "13", "--to", "13", "--json"}).out ==
          "{\"b\":\"97\",\"incomplete\":false,\"n\":13,\"ratio\":\"8.24742e-1\",\"t\":\"80\"}\n");
    auto weak = call({"--rho-budget", "1", "ratio", "--from", "17", "--to", "18"});
    CHECK(weak.code == 2);
    CHECK(weak.out.find("n=18 t=? b=? ratio≈? INCOMPLETE") != std::string::npos);
    CHECK(call({"ratio", "--from", "14", "--to", "13"}).code == 1);
}

TEST_CASE("nt") {
    CHECK(call({"nt", "r4", "6"}).out == "96\n");
    CHECK(call({"nt", "r3", "10000"}).out == "150\n");
    CHECK(call({"nt", "sigma", "18"}).out == "39\n");
    CHECK(call({"nt", "factor", "9223372036854775809"}).out == "3^3 * 19 * 43 * 5419 * 77158673929\n");
    CHECK(call({"nt", "factor", "abc"}).code == 1);
    CHECK(call({"nt", "r5", "3"}).code == 1);
    CHECK(call({"nt", "r3", "2000006"}).code == 1);
    CHECK(call({"--rho-budget", "3", "nt", "factor", "4611685975477714963"}).code == 2);
}

TEST_CASE("reduce and verify the reduction") {
    fs::path p = scratch("p.txt", "x1 - 3\n");
    auto r = call({"reduce", "--poly", p.string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("# reduction of: x1 - 3 = 0\n# aliases: x2=u1", 0) == 0);
    CHECK(r.out.find("vars 9\n") != std::string::npos);

    auto v = call({"verify", "reduction", "--poly", p.string(), "--box", "10"});
    CHECK(v.out == "roots 1\n(3)\nmax_height 3\ncount 14112\nverdict pass\n");
    fs::path none = scratch("none.txt", "x1^2 + 1\n");
    auto h = call({"verify", "lemma2", "--poly", none.string(), "--box", "10"});
    CHECK(h.code == 0);
    CHECK(h.out == "roots 0\nhypothesis violated: no integer root in the box\n");
}

TEST_CASE("verify the S_n height bound") {
    auto r = call({"verify", "height", "--n", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "n 5\nbound 36\nsolutions 6\npositive_solution yes\nannulus (36, 72] empty\n"
                   "max_solution (6, 36, 5, 4, 9)\nexpected (6, 36, 5, 4, 9)\nverdict pass\n");
    CHECK(call({"verify", "height", "--n", "9"}).code == 1);
    // short names from the original command grammar
    CHECK(call({"verify", "thm4", "--n", "5"}).out == r.out);
}

TEST_CASE("explore") {
    auto r = call({"explore", "--n", "4", "--max-eqs", "0"});
    CHECK(r.out == "totals systems=1 no_solution=0 within_bound=0 exceeds_bound=0 likely_infinite=1\n");
    auto three = call({"explore", "--n", "4", "--max-eqs", "3", "--limit", "8"});
    const std::string s4 = dioph::render_system_line(dioph::canonical_label(dioph::gen_S(4)));
    CHECK(three.out.find("within_bound | " + s4 + " | witnesses=-\n") != std::string::npos);
    CHECK(three.out.find("exceeds_bound | ") != std::string::npos);
    auto j = call({"explore", "--n", "4", "--max-eqs", "0", "--json"});
    CHECK(j.out == "{\"totals\":{\"exceeds_bound\":0,\"likely_infinite\":1,\"no_solution\":0,\"systems\":1,"
                   "\"truncated\":false,\"within_bound\":0}}\n");
    CHECK(call({"explore", "--n", "3", "--max-eqs", "1"}).code == 1);
    CHECK(call({"explore", "--n", "4", "--max-eqs", "2", "--node-budget", "3"}).code == 3);
}

TEST_CASE("check t20") {
    auto r = call({"check", "t20", "--table", data_dir() + "/factor_tables/2p255.txt"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ratio_lower_bound≈2.75143e9748\nexceeds 2.75e9748 yes\n") != std::string::npos);
    fs::path wrong = scratch("wrong.txt", "57896044618658097711785492504343953926634992332820282019728792003956564819969 : 3 * 11\n");
    auto w = call({"check", "t20", "--table", wrong.string()});
    CHECK(w.code == 1);
    CHECK(w.err.find("does not match") != std::string::npos);
}

TEST_CASE("help and usage") {
    auto h = call({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("Exit codes") != std::string::npos);
    for (const char* sub : {"gen", "solve", "count", "ratio", "nt", "reduce", "explore"}) {
        auto s = call({sub, "--help"});
        CHECK(s.code == 0);
        CHECK_FALSE(s.out.empty());
    }
    CHECK(call({"solve", "--help"}).out.find("vars <n>") != std::string::npos);
    CHECK(call({"reduce", "--help"}).out.find("Polynomial file") != std::string::npos);
    CHECK(call({"check", "t20", "--help"}).out.find("Factor table file") != std::string::npos);
    CHECK(call({}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
}

TEST_CASE("output is deterministic across threads and equation order") {
    fs::path a = scratch("t12a.txt", dioph::render_system(dioph::gen_T(12)));
    dioph::System rev = dioph::gen_T(12);
    std::reverse(rev.equations.begin(), rev.equations.end());
    fs::path b = scratch("t12b.txt", dioph::render_system(rev));
    auto one = call({"solve", "--system", a.string(), "--bound", "16", "--list"});
    auto many = call({"--threads", "4", "solve", "--system", a.string(), "--bound", "16", "--list"});
    auto perm = call({"solve", "--system", b.string(), "--bound", "16", "--list"});
    CHECK(one.out == many.out);
    CHECK(one.out == perm.out);
    CHECK(call({"ratio", "--from", "13", "--to", "16"}).out ==
          call({"ratio", "--from", "13", "--to", "16", "--threads", "4"}).out);
}
