#include "girthforge/io.hpp"
#include "girthforge/graph_ops.hpp"

#include "corpus.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace gf;

namespace {

ParsedGraph parse_str(const std::string& s)
{
    std::istringstream in(s);
    return parse_edgelist_text(in, "test");
}

}  // namespace

TEST_CASE("parse plain graph")
{
    auto pg = parse_str("3 2\n0 1\n1 2\n");
    auto& g = std::get<Graph>(pg);
    CHECK(g.n == 3);
    CHECK(g.m == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
}

TEST_CASE("parse with comments and whitespace")
{
    auto pg = parse_str("# a comment\n  2 1 \n# another\n 0 1\n");
    CHECK(std::get<Graph>(pg).m == 1);
}

TEST_CASE("parse bipartite")
{
    auto pg = parse_str("4 2\n0 2\n1 3\nA: 0 1\n");
    auto& bg = std::get<BipartiteGraph>(pg);
    CHECK(bg.class_a == std::vector<int>{0, 1});
    CHECK(bg.class_b == std::vector<int>{2, 3});
}

TEST_CASE("parse errors carry line numbers")
{
    auto expect_error = [](const std::string& body, const std::string& needle) {
        try {
            parse_str(body);
            FAIL("expected parse_error for: " << body);
        } catch (const parse_error& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("2 1\n0 0\n", "test:2");
    expect_error("2 1\n0 0\n", "self-loop");
    expect_error("2 1\n0 5\n", "out of range");
    expect_error("2 1\n1 0\n", "u < v");
    expect_error("nonsense\n", "header");
    expect_error("3 2\n0 1\n", "declared 2 edges, found 1");
    expect_error("3 1\n0 1\n1 2\n", "more edges than declared");
    expect_error("3 2\n0 1\n0 1\n", "duplicate");
    expect_error("3 2\n0 1\n1 2\nA: 0 1\n", "bipartition");
    expect_error("", "missing header");
    expect_error("2 1\n0 1 9\n", "trailing");
}

TEST_CASE("round trip over a corpus")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = corpus::random_graph(11, 4, 10, 1234 + seed);
        auto back = std::get<Graph>(parse_str(emit_edgelist_text(g)));
        CHECK(back.n == g.n);
        CHECK(back.edges() == g.edges());
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto bg = corpus::random_bipartite(5, 7, 4, 10, 99 + seed);
        auto back = std::get<BipartiteGraph>(parse_str(emit_edgelist_text(bg)));
        CHECK(back.g.edges() == bg.g.edges());
        CHECK(back.class_a == bg.class_a);
    }
}
