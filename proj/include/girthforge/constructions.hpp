#pragma once

#include "girthforge/graph_ops.hpp"

#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace gf {

// Bipartite graph whose classes are partitioned into blocks (the blown-up
// vertices). Block ids: a-blocks 0..r-1, then b-blocks r..r+s-1.
struct PartitionedBipartite {
    BipartiteGraph bg;
    std::vector<std::vector<int>> blocks_a;
    std::vector<std::vector<int>> blocks_b;
    std::vector<int> block_of;  // vertex -> global block id

    static PartitionedBipartite make(BipartiteGraph bg, std::vector<std::vector<int>> blocks_a,
                                     std::vector<std::vector<int>> blocks_b)
    {
        PartitionedBipartite pb;
        pb.block_of.assign(static_cast<std::size_t>(bg.g.n), -1);
        int id = 0;
        auto place = [&](const std::vector<std::vector<int>>& blocks, bool a_side) {
            for (const auto& blk : blocks) {
                if (blk.empty())
                    throw std::invalid_argument("PartitionedBipartite: empty block");
                for (int v : blk) {
                    if (v < 0 || v >= bg.g.n || pb.block_of[static_cast<std::size_t>(v)] != -1)
                        throw std::invalid_argument("PartitionedBipartite: bad or repeated vertex "
                                                    + std::to_string(v));
                    if (bg.in_a(v) != a_side)
                        throw std::invalid_argument("PartitionedBipartite: vertex "
                                                    + std::to_string(v) + " in wrong class");
                    pb.block_of[static_cast<std::size_t>(v)] = id;
                }
                ++id;
            }
        };
        place(blocks_a, true);
        place(blocks_b, false);
        for (int v = 0; v < bg.g.n; ++v)
            if (pb.block_of[static_cast<std::size_t>(v)] == -1)
                throw std::invalid_argument("PartitionedBipartite: vertex " + std::to_string(v)
                                            + " not covered by any block");
        pb.bg = std::move(bg);
        pb.blocks_a = std::move(blocks_a);
        pb.blocks_b = std::move(blocks_b);
        return pb;
    }
};

// Block-level graph with an edge wherever two blocks carry at least one
// edge. Vertex a_i = i, b_j = num_a_blocks + j.
struct Skeleton {
    Graph graph;
    int num_a_blocks = 0;
    int num_b_blocks = 0;
};

// Replace each host vertex by a block of d^2 vertices and each host edge by
// a complete K_{d^2,d^2} between the blocks.
inline PartitionedBipartite blow_up(const BipartiteGraph& host, int d)
{
    if (d < 1)
        throw std::invalid_argument("blow_up: d must be >= 1");
    long long dd = static_cast<long long>(d) * d;
    auto block_start = [&](int v) { return static_cast<int>(v * dd); };
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : host.g.edges())
        for (int i = 0; i < dd; ++i)
            for (int j = 0; j < dd; ++j) {
                int u = block_start(a) + i;
                int v = block_start(b) + j;
                edges.emplace_back(std::min(u, v), std::max(u, v));
            }
    std::vector<int> a_ids;
    std::vector<std::vector<int>> blocks_a, blocks_b;
    for (int v : host.class_a) {
        std::vector<int> blk;
        for (int i = 0; i < dd; ++i) {
            blk.push_back(block_start(v) + i);
            a_ids.push_back(block_start(v) + i);
        }
        blocks_a.push_back(std::move(blk));
    }
    for (int v : host.class_b) {
        std::vector<int> blk;
        for (int i = 0; i < dd; ++i)
            blk.push_back(block_start(v) + i);
        blocks_b.push_back(std::move(blk));
    }
    auto g = Graph::from_edges(static_cast<int>(host.g.n * dd), edges);
    return PartitionedBipartite::make(BipartiteGraph::make(std::move(g), a_ids),
                                      std::move(blocks_a), std::move(blocks_b));
}

// Desk-scale stand-in for the irregular host: balanced bipartite on m+m
// vertices, every class-A degree exactly d, class-B degrees following a
// heavy-tailed target sequence. The seed only permutes which B vertex gets
// which target degree. Deliberately NOT certified to have the full
// no-dense-bounded-subgraph property of the cited construction.
inline BipartiteGraph irregular_host(int d, int m, std::uint64_t seed)
{
    if (d < 1)
        throw std::invalid_argument("irregular_host: d must be >= 1");
    if (m < d)
        throw std::invalid_argument("irregular_host: need m >= d (class-A degree "
                                    + std::to_string(d) + " impossible with |B| = "
                                    + std::to_string(m) + ")");
    long long total = static_cast<long long>(d) * m;
    // geometric decay, clamped to the simple-graph cap m, then fixed up so
    // the targets sum to d*m
    std::vector<long long> target(static_cast<std::size_t>(m), 0);
    long long want = total;
    for (int j = 0; j < m; ++j) {
        long long v = std::min<long long>(m, std::max<long long>(1, want / 2));
        target[static_cast<std::size_t>(j)] = v;
        want -= v;
        if (want <= 0) {
            want = 0;
            break;
        }
    }
    for (int j = 0; j < m && want > 0; ++j) {
        long long room = m - target[static_cast<std::size_t>(j)];
        long long add = std::min(room, want);
        target[static_cast<std::size_t>(j)] += add;
        want -= add;
    }
    long long sum = std::accumulate(target.begin(), target.end(), 0LL);
    for (int j = m - 1; j >= 0 && sum > total; --j) {
        long long cut = std::min(target[static_cast<std::size_t>(j)], sum - total);
        target[static_cast<std::size_t>(j)] -= cut;
        sum -= cut;
    }
    if (sum != total)
        throw std::invalid_argument("irregular_host: infeasible degree sequence");
    std::mt19937_64 rng(seed);
    std::shuffle(target.begin(), target.end(), rng);
    // greedy realization: each A vertex takes the d B vertices with the
    // largest remaining demand (ties by lowest id)
    std::vector<std::pair<int, int>> edges;
    std::vector<long long> demand = target;
    for (int a = 0; a < m; ++a) {
        std::vector<int> order(static_cast<std::size_t>(m));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return demand[static_cast<std::size_t>(x)] > demand[static_cast<std::size_t>(y)]; });
        int taken = 0;
        for (int b : order) {
            if (taken == d)
                break;
            if (demand[static_cast<std::size_t>(b)] <= 0)
                break;
            --demand[static_cast<std::size_t>(b)];
            edges.emplace_back(a, m + b);
            ++taken;
        }
        if (taken != d)
            throw std::invalid_argument("irregular_host: infeasible degree sequence");
    }
    std::vector<int> a_ids(static_cast<std::size_t>(m));
    std::iota(a_ids.begin(), a_ids.end(), 0);
    return BipartiteGraph::make(Graph::from_edges(2 * m, edges), a_ids);
}

inline Skeleton skeleton(const PartitionedBipartite& pb, const Graph& sub)
{
    if (sub.n != pb.bg.g.n)
        throw std::invalid_argument("skeleton: sub must live on the partition's vertex set");
    for (auto [u, v] : sub.edges())
        if (!pb.bg.g.has_edge(u, v))
            throw std::invalid_argument("skeleton: edge (" + std::to_string(u) + ","
                                        + std::to_string(v) + ") not in the partitioned graph");
    int r = static_cast<int>(pb.blocks_a.size());
    int s = static_cast<int>(pb.blocks_b.size());
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<char>> seen(static_cast<std::size_t>(r),
                                        std::vector<char>(static_cast<std::size_t>(s), 0));
    for (auto [u, v] : sub.edges()) {
        int a = pb.bg.in_a(u) ? u : v;
        int b = pb.bg.in_a(u) ? v : u;
        int i = pb.block_of[static_cast<std::size_t>(a)];
        int j = pb.block_of[static_cast<std::size_t>(b)] - r;
        if (!seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
            edges.emplace_back(i, r + j);
        }
    }
    return Skeleton{Graph::from_edges(r + s, edges), r, s};
}

// Type 1: |N(a) cap B_j| >= d. Type 2: |N(b) cap A_i| >= d. Type 3:
// neither. Edges that are both Type 1 and Type 2 go to g1 only, so the
// three parts partition E(sub).
struct EdgeTypeSplit {
    Graph g1, g2, g3;
};

inline int neighbors_in_block(const Graph& sub, int v, const std::vector<int>& block)
{
    int c = 0;
    for (int u : block)
        if (sub.has_edge(v, u))
            ++c;
    return c;
}

inline EdgeTypeSplit classify_edges(const PartitionedBipartite& pb, const Graph& sub, int d)
{
    skeleton(pb, sub);  // input validation
    int r = static_cast<int>(pb.blocks_a.size());
    std::vector<std::pair<int, int>> e1, e2, e3;
    for (auto [u, v] : sub.edges()) {
        int a = pb.bg.in_a(u) ? u : v;
        int b = pb.bg.in_a(u) ? v : u;
        int i = pb.block_of[static_cast<std::size_t>(a)];
        int j = pb.block_of[static_cast<std::size_t>(b)] - r;
        int ca = neighbors_in_block(sub, a, pb.blocks_b[static_cast<std::size_t>(j)]);
        int cb = neighbors_in_block(sub, b, pb.blocks_a[static_cast<std::size_t>(i)]);
        if (ca >= d)
            e1.emplace_back(u, v);
        else if (cb >= d)
            e2.emplace_back(u, v);
        else
            e3.emplace_back(u, v);
    }
    return EdgeTypeSplit{Graph::from_edges(sub.n, e1), Graph::from_edges(sub.n, e2),
                         Graph::from_edges(sub.n, e3)};
}

struct VerificationReport {
    bool ok = true;
    std::vector<std::string> lines;

    void check(bool cond, const std::string& what)
    {
        lines.push_back(std::string(cond ? "pass: " : "FAIL: ") + what);
        if (!cond)
            ok = false;
    }
    void note(const std::string& what) { lines.push_back("info: " + what); }
};

// e(G) <= n^{3/2}/2 + n/4, evaluated exactly: the largest integer E with
// (4E - n)^2 <= 4 n^3 is floor((isqrt(4n^3) + n) / 4).
struct ErsBound {
    long long max_edges = 0;
    Rational quarter_form;  // (isqrt(4n^3) + n) / 4, a rational lower form of the bound
};

inline ErsBound ers_bound(long long n)
{
    if (n < 0)
        throw std::invalid_argument("ers_bound: negative n");
    using detail::bigint;
    bigint x = boost::multiprecision::sqrt(bigint(4) * n * n * n);
    bigint e = (x + n) / 4;
    ErsBound b;
    b.max_edges = static_cast<long long>(e);
    b.quarter_form = Rational(static_cast<long long>(x) + n, 4);
    return b;
}

inline bool satisfies_ers(const Graph& g) { return g.m <= ers_bound(g.n).max_edges; }

// Core of the lemma9 verifier, parameterized so the lemma8 verifier can
// reuse it on either class orientation. `blocks` partition the class
// opposite to the one `others` ranges over.
inline VerificationReport verify_block_degree_bound(const BipartiteGraph& bg,
                                                    const std::vector<std::vector<int>>& blocks,
                                                    const std::vector<int>& others, int d,
                                                    bool enforce_hypothesis)
{
    VerificationReport rep;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (static_cast<long long>(blocks[i].size()) > static_cast<long long>(d) * d)
            throw contract_error("lemma9: block " + std::to_string(i) + " larger than d^2");
        long long heavy = 0;
        for (int b : others) {
            int c = neighbors_in_block(bg.g, b, blocks[i]);
            if (c > 0 && c < d) {
                if (enforce_hypothesis)
                    throw contract_error("lemma9: vertex " + std::to_string(b) + " has 0 < "
                                         + std::to_string(c) + " < d neighbours in block "
                                         + std::to_string(i));
                continue;
            }
            if (c >= d)
                ++heavy;
        }
        rep.check(heavy <= 2 * static_cast<long long>(blocks[i].size()),
                  "block " + std::to_string(i) + ": |B'| = " + std::to_string(heavy)
                      + " <= 2|A_i| = " + std::to_string(2 * blocks[i].size()));
    }
    Rational avg = bg.g.average_degree();
    rep.check(avg <= Rational(18LL * d), "d(G) = " + avg.str() + " <= 18d = " + std::to_string(18 * d));
    return rep;
}

inline VerificationReport verify_lemma9(const BipartiteGraph& bg,
                                        const std::vector<std::vector<int>>& blocks_a, int d)
{
    if (d < 3)
        throw contract_error("verify_lemma9: d must be >= 3");
    if (!is_c4_free(bg.g))
        throw contract_error("verify_lemma9: input is not C4-free");
    return verify_block_degree_bound(bg, blocks_a, bg.class_b, d, true);
}

// 13kd ceiling: with k the skeleton degeneracy, d(sub) <= 13kd; the
// intermediate bounds are asserted too (both typed parts obey the 18d
// ceiling, the rest is kd-degenerate).
inline VerificationReport verify_lemma8(const PartitionedBipartite& pb, const Graph& sub, int d)
{
    if (!is_c4_free(sub))
        throw contract_error("verify_lemma8: sub is not C4-free");
    for (const auto& blk : pb.blocks_a)
        if (static_cast<long long>(blk.size()) > static_cast<long long>(d) * d)
            throw contract_error("verify_lemma8: class-A block larger than d^2");
    for (const auto& blk : pb.blocks_b)
        if (static_cast<long long>(blk.size()) > static_cast<long long>(d) * d)
            throw contract_error("verify_lemma8: class-B block larger than d^2");
    VerificationReport rep;
    Skeleton sk = skeleton(pb, sub);
    int k = degeneracy(sk.graph).k;
    rep.note("skeleton degeneracy k = " + std::to_string(k));
    EdgeTypeSplit split = classify_edges(pb, sub, d);
    rep.check(split.g1.m + split.g2.m + split.g3.m == sub.m, "edge types partition E(G)");
    rep.check(split.g1.average_degree() <= Rational(18LL * d),
              "d(G1) = " + split.g1.average_degree().str() + " <= 18d");
    rep.check(split.g2.average_degree() <= Rational(18LL * d),
              "d(G2) = " + split.g2.average_degree().str() + " <= 18d");
    int g3_degen = degeneracy(split.g3).k;
    rep.check(Rational(g3_degen) <= Rational(k) * Rational(d),
              "G3 degeneracy " + std::to_string(g3_degen) + " <= kd = " + std::to_string(k * d));
    rep.check(sub.average_degree() <= Rational(13LL * k * d),
              "d(G) = " + sub.average_degree().str() + " <= 13kd = " + std::to_string(13 * k * d));
    return rep;
}

// Skeleton split: a_i b_j is in H1 exactly if sub[A_i u B_j]
// has an A_i vertex with at least two B_j neighbours; H2 is the rest of the
// skeleton.
inline std::pair<Skeleton, Skeleton> build_H1_H2(const PartitionedBipartite& pb, const Graph& sub)
{
    if (!is_c4_free(sub))
        throw contract_error("build_H1_H2: sub is not C4-free");
    Skeleton sk = skeleton(pb, sub);
    int r = sk.num_a_blocks;
    std::vector<std::pair<int, int>> e1, e2;
    for (auto [i, bj] : sk.graph.edges()) {
        int j = bj - r;
        bool multi = false;
        for (int a : pb.blocks_a[static_cast<std::size_t>(i)])
            if (neighbors_in_block(sub, a, pb.blocks_b[static_cast<std::size_t>(j)]) >= 2) {
                multi = true;
                break;
            }
        (multi ? e1 : e2).emplace_back(i, bj);
    }
    Skeleton h1{Graph::from_edges(sk.graph.n, e1), r, sk.num_b_blocks};
    Skeleton h2{Graph::from_edges(sk.graph.n, e2), r, sk.num_b_blocks};
    // C4-freeness caps each b_j's H1-degree by C(|B_j|, 2)
    for (int j = 0; j < sk.num_b_blocks; ++j) {
        long long bj_size = static_cast<long long>(pb.blocks_b[static_cast<std::size_t>(j)].size());
        long long cap = bj_size * (bj_size - 1) / 2;
        if (h1.graph.degree(r + j) > cap)
            throw std::logic_error("build_H1_H2: H1 degree bound violated at block "
                                   + std::to_string(j));
    }
    return {std::move(h1), std::move(h2)};
}

}  // namespace gf
