#include "girthforge/constructions.hpp"
#include "girthforge/extraction.hpp"
#include "girthforge/oracle.hpp"
#include "girthforge/planes.hpp"

#include "corpus.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gf;

namespace {

PartitionedBipartite blow_up_edge(int d)
{
    auto host = BipartiteGraph::make(Graph::from_edges(2, {{0, 1}}), {0});
    return blow_up(host, d);
}

}  // namespace

TEST_CASE("blow_up counts")
{
    // single edge, d = 2: K_{4,4}
    auto pb = blow_up_edge(2);
    CHECK(pb.bg.g.n == 8);
    CHECK(pb.bg.g.m == 16);
    CHECK(pb.blocks_a.size() == 1);
    CHECK(pb.blocks_b.size() == 1);

    // P3 path a-b-a, d = 2: 12 vertices, 32 edges, d(G) = 16/3
    auto p3 = BipartiteGraph::make(corpus::path(3), {0, 2});
    auto pb3 = blow_up(p3, 2);
    CHECK(pb3.bg.g.n == 12);
    CHECK(pb3.bg.g.m == 32);
    CHECK(pb3.bg.g.average_degree() == Rational(16, 3));

    // exact edge/vertex accounting over small hosts
    for (std::uint64_t seed = 0; seed < 8; ++seed)
        for (int d = 1; d <= 3; ++d) {
            auto host = corpus::random_bipartite(4, 4, 6, 10, 2200 + seed);
            auto b = blow_up(host, d);
            long long dd = static_cast<long long>(d) * d;
            CHECK(b.bg.g.n == host.g.n * dd);
            CHECK(b.bg.g.m == host.g.m * dd * dd);
        }
    CHECK_THROWS_AS(blow_up(p3, 0), std::invalid_argument);
}

TEST_CASE("blow_up of a uniform-A-degree balanced host has average degree d^3")
{
    for (int d = 2; d <= 3; ++d) {
        // host: balanced 4+4, every A-vertex of degree d (B-degrees then
        // average d too)
        std::vector<std::pair<int, int>> e;
        for (int a = 0; a < 4; ++a)
            for (int j = 0; j < d; ++j)
                e.emplace_back(a, 4 + (a + j) % 4);
        auto host = BipartiteGraph::make(Graph::from_edges(8, e), {0, 1, 2, 3});
        CHECK(host.g.average_degree() == Rational(d));
        auto b = blow_up(host, d);
        CHECK(b.bg.g.average_degree() == Rational(d).pow_int(3));
    }
}

TEST_CASE("irregular_host")
{
    auto m1 = irregular_host(1, 3, 0);
    CHECK(m1.g.m == 3);
    for (int v : m1.class_a)
        CHECK(m1.g.degree(v) == 1);

    auto h = irregular_host(2, 4, 5);
    CHECK(h.g.m == 8);
    for (int v : h.class_a)
        CHECK(h.g.degree(v) == 2);

    CHECK_THROWS_AS(irregular_host(3, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(irregular_host(0, 3, 0), std::invalid_argument);

    // determinism per seed; B-degree spread for larger cases
    auto h1 = irregular_host(4, 30, 11);
    auto h2 = irregular_host(4, 30, 11);
    CHECK(h1.g.edges() == h2.g.edges());
    for (int v : h1.class_a)
        CHECK(h1.g.degree(v) == 4);
    int bmax = 0, bmin = 1 << 30;
    for (int v : h1.class_b) {
        bmax = std::max(bmax, h1.g.degree(v));
        bmin = std::min(bmin, h1.g.degree(v));
    }
    CHECK(bmax > 4);  // heavy tail present
    CHECK(bmin < 4);
}

TEST_CASE("skeleton")
{
    auto pb = blow_up_edge(2);
    CHECK(skeleton(pb, pb.bg.g).graph.m == 1);
    CHECK(skeleton(pb, Graph::from_edges(pb.bg.g.n, {})).graph.m == 0);

    auto p3 = BipartiteGraph::make(corpus::path(3), {0, 2});
    auto pb3 = blow_up(p3, 2);
    // remove every edge between the blocks of host edge (0, 1)
    auto edges = pb3.bg.g.edges();
    std::erase_if(edges, [&](auto e) {
        return pb3.block_of[static_cast<std::size_t>(e.first)] == 0
               || pb3.block_of[static_cast<std::size_t>(e.second)] == 0;
    });
    auto sk = skeleton(pb3, Graph::from_edges(pb3.bg.g.n, edges));
    CHECK(sk.graph.m == 1);

    // foreign edge rejected: vertices 0 and 8 are in two class-A blocks
    CHECK_THROWS_AS(skeleton(pb3, Graph::from_edges(pb3.bg.g.n, {{0, 8}})),
                    std::invalid_argument);
}

TEST_CASE("classify_edges")
{
    // one K_{4,4} block pair, d = 2: every edge Type 1
    std::vector<int> a4{0, 1, 2, 3};
    auto k44 = BipartiteGraph::make(corpus::complete_bipartite(4, 4), a4);
    auto pb = PartitionedBipartite::make(k44, {{0, 1, 2, 3}}, {{4, 5, 6, 7}});
    auto split = classify_edges(pb, pb.bg.g, 2);
    CHECK(split.g1.m == 16);
    CHECK(split.g2.m == 0);
    CHECK(split.g3.m == 0);

    // perfect matching across the blocks, d = 2: every edge Type 3
    auto matching = Graph::from_edges(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}});
    auto sm = classify_edges(pb, matching, 2);
    CHECK(sm.g3.m == 4);
    CHECK(sm.g1.m + sm.g2.m == 0);

    // d = 1: no edge can be Type 3
    auto s1 = classify_edges(pb, matching, 1);
    CHECK(s1.g3.m == 0);
    CHECK(s1.g1.m + s1.g2.m + s1.g3.m == matching.m);
}

TEST_CASE("verify_lemma8")
{
    auto pb = blow_up_edge(2);
    // matching sub: trivially fine
    auto matching = Graph::from_edges(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}});
    auto rep = verify_lemma8(pb, matching, 2);
    CHECK(rep.ok);

    // Fano incidence with singleton blocks, d = 4
    auto fano = incidence_graph(build_plane(2));
    std::vector<std::vector<int>> ba, bb;
    for (int v : fano.class_a)
        ba.push_back({v});
    for (int v : fano.class_b)
        bb.push_back({v});
    auto fpb = PartitionedBipartite::make(fano, ba, bb);
    auto frep = verify_lemma8(fpb, fpb.bg.g, 4);
    CHECK(frep.ok);

    // a C4 in sub is a contract violation
    CHECK_THROWS_AS(verify_lemma8(pb, Graph::from_edges(8, {{0, 4}, {0, 5}, {1, 4}, {1, 5}}), 2),
                    contract_error);
    // oversized blocks rejected
    auto big = blow_up_edge(3);  // blocks of 9 > 2^2
    CHECK_THROWS_AS(verify_lemma8(big, Graph::from_edges(big.bg.g.n, {}), 2), contract_error);
}

TEST_CASE("verify_lemma9")
{
    auto fano = incidence_graph(build_plane(2));
    // single class-A block of size 7 <= 9; every line meets it in 3 = d points
    auto rep = verify_lemma9(fano, {{0, 1, 2, 3, 4, 5, 6}}, 3);
    CHECK(rep.ok);

    CHECK_THROWS_AS(verify_lemma9(fano, {{0, 1, 2, 3, 4, 5, 6}}, 2), contract_error);  // d < 3
    // a b-vertex with 0 < neighbors < d in a block violates the hypothesis
    auto p4 = BipartiteGraph::make(corpus::path(4), {0, 2});
    CHECK_THROWS_AS(verify_lemma9(p4, {{0, 2}}, 3), contract_error);
    // edgeless graph passes trivially
    auto none = BipartiteGraph::make(Graph::from_edges(4, {}), {0, 1});
    CHECK(verify_lemma9(none, {{0, 1}}, 3).ok);
}

TEST_CASE("ers_bound")
{
    CHECK(ers_bound(0).max_edges == 0);
    CHECK(ers_bound(4).max_edges == 5);
    CHECK(ers_bound(14).max_edges == 29);
    CHECK_THROWS_AS(ers_bound(-1), std::invalid_argument);
    // exact at perfect squares: n = 16 gives 16^{3/2}/2 + 4 = 36
    CHECK(ers_bound(16).max_edges == 36);
    CHECK(ers_bound(16).quarter_form == Rational(36));
    // monotone
    long long prev = 0;
    for (long long n = 0; n <= 60; ++n) {
        auto b = ers_bound(n);
        CHECK(b.max_edges >= prev);
        prev = b.max_edges;
    }
    // the fano incidence graph respects the bound
    CHECK(satisfies_ers(incidence_graph(build_plane(2)).g));
}

TEST_CASE("build_H1_H2")
{
    auto p3 = BipartiteGraph::make(corpus::path(3), {0, 2});
    auto pb3 = blow_up(p3, 2);
    // matching sub: H1 empty, H2 = full skeleton
    std::vector<std::pair<int, int>> me;
    for (int i = 0; i < 4; ++i) {
        me.emplace_back(i, 4 + i);       // block 0 to block 1 (b-block)
        me.emplace_back(4 + i, 8 + i);   // b-block to block 2
    }
    auto matching = Graph::from_edges(12, me);
    auto [h1, h2] = build_H1_H2(pb3, matching);
    CHECK(h1.graph.m == 0);
    CHECK(h2.graph.m == 2);

    // one A-vertex with two neighbors in one block pulls that pair into H1
    auto two = Graph::from_edges(12, {{0, 4}, {0, 5}});
    auto [j1, j2] = build_H1_H2(pb3, two);
    CHECK(j1.graph.m == 1);
    CHECK(j2.graph.m == 0);

    // C4-free oracle subgraph: H1/H2 partition the skeleton
    auto best = max_c4free_edges(induced_subgraph(pb3.bg.g, {0, 1, 2, 3, 4, 5, 6, 7}).g,
                                 OracleBudget{12, 24, 60.0});
    auto sub = Graph::from_edges(12, best.witness);
    auto sk = skeleton(pb3, sub);
    auto [s1, s2] = build_H1_H2(pb3, sub);
    CHECK(s1.graph.m + s2.graph.m == sk.graph.m);

    CHECK_THROWS_AS(build_H1_H2(pb3, Graph::from_edges(12, {{0, 4}, {0, 5}, {1, 4}, {1, 5}})),
                    contract_error);
}

TEST_CASE("G2-side accounting on C4-free subgraphs of blow-ups")
{
    // in the Type-3 part no A-vertex has two neighbors in one B block
    auto p3 = BipartiteGraph::make(corpus::path(3), {0, 2});
    auto pb = blow_up(p3, 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto sub = sparsify_bounded_degree(pb.bg.g, SamplerConfig{seed, 5});
        REQUIRE(is_c4_free(sub.subgraph));
        auto split = classify_edges(pb, sub.subgraph, 2);
        int r = static_cast<int>(pb.blocks_a.size());
        for (auto [u, v] : split.g3.edges()) {
            int a = pb.bg.in_a(u) ? u : v;
            int b = pb.bg.in_a(u) ? v : u;
            int j = pb.block_of[static_cast<std::size_t>(b)] - r;
            CHECK(neighbors_in_block(split.g3, a, pb.blocks_b[static_cast<std::size_t>(j)]) <= 1);
        }
    }
}
