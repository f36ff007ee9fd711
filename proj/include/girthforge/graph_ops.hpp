#pragma once

#include "girthforge/graph.hpp"

#include <array>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace gf {

inline Rational average_degree(const Graph& g) { return g.average_degree(); }

inline int codegree(const Graph& g, int x, int y)
{
    if (x < 0 || x >= g.n || y < 0 || y >= g.n || x == y)
        throw std::invalid_argument("codegree: invalid vertex pair");
    const auto& a = g.adj[static_cast<std::size_t>(x)];
    const auto& b = g.adj[static_cast<std::size_t>(y)];
    int c = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else {
            ++c;
            ++i;
            ++j;
        }
    }
    return c;
}

// Girth via BFS from every vertex; nullopt means acyclic. For a non-tree
// edge (u, w) met at BFS depth dist[u], dist[w], the closed walk of length
// dist[u]+dist[w]+1 contains a cycle, and a shortest cycle is found exactly
// when rooting at one of its vertices, so the minimum over all roots is the
// girth.
inline std::optional<int> girth(const Graph& g)
{
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(g.n));
    std::vector<int> parent(static_cast<std::size_t>(g.n));
    for (int s = 0; s < g.n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (2 * dist[static_cast<std::size_t>(u)] >= best)
                continue;
            for (int w : g.adj[static_cast<std::size_t>(u)]) {
                if (dist[static_cast<std::size_t>(w)] == -1) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    parent[static_cast<std::size_t>(w)] = u;
                    q.push(w);
                } else if (w != parent[static_cast<std::size_t>(u)]) {
                    best = std::min(best,
                                    dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(w)] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max())
        return std::nullopt;
    return best;
}

// A 4-cycle x-u-y-v-x stored canonically: x is the smallest vertex of the
// cycle, {x, y} and {u, v} its two opposite pairs, u < v.
using Cycle4 = std::array<int, 4>;

// Every C4 exactly once: iterate over opposite pairs (x, y) with x < y and
// common-neighbour pairs u < v, keeping only the orientation where x is the
// overall minimum. Output is lexicographically sorted by construction.
inline std::vector<Cycle4> enumerate_c4(const Graph& g)
{
    std::vector<Cycle4> out;
    std::vector<int> common;
    for (int x = 0; x < g.n; ++x) {
        for (int y = x + 1; y < g.n; ++y) {
            common.clear();
            const auto& a = g.adj[static_cast<std::size_t>(x)];
            const auto& b = g.adj[static_cast<std::size_t>(y)];
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j])
                    ++i;
                else if (a[i] > b[j])
                    ++j;
                else {
                    if (a[i] > x)  // x must be the minimum of the cycle
                        common.push_back(a[i]);
                    ++i;
                    ++j;
                }
            }
            for (std::size_t p = 0; p < common.size(); ++p)
                for (std::size_t q = p + 1; q < common.size(); ++q)
                    out.push_back({x, common[p], y, common[q]});
        }
    }
    return out;
}

inline bool is_c4_free(const Graph& g)
{
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y)
            if (codegree(g, x, y) >= 2)
                return false;
    return true;
}

inline bool has_triangle(const Graph& g)
{
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[static_cast<std::size_t>(u)])
            if (u < v && codegree(g, u, v) > 0)
                return true;
    return false;
}

// Deterministic alteration: while a C4 survives, delete the
// lexicographically smallest edge of the lexicographically smallest
// canonical cycle. Removes at most one edge per original C4.
inline Graph c4_alteration(Graph g)
{
    for (;;) {
        auto cycles = enumerate_c4(g);
        if (cycles.empty())
            return g;
        const Cycle4& c = cycles.front();
        std::pair<int, int> best{std::numeric_limits<int>::max(), 0};
        for (int i = 0; i < 4; ++i) {
            int u = c[static_cast<std::size_t>(i)];
            int v = c[static_cast<std::size_t>((i + 1) % 4)];
            if (u > v)
                std::swap(u, v);
            best = std::min(best, {u, v});
        }
        auto edges = g.edges();
        std::erase(edges, best);
        g = Graph::from_edges(g.n, edges);
    }
}

// Spanning bipartite subgraph with at least half of the edges: greedy
// assignment in id order, then single-vertex swaps to a local optimum.
inline BipartiteGraph bipartize(const Graph& g)
{
    std::vector<char> side(static_cast<std::size_t>(g.n), 0);
    std::vector<char> assigned(static_cast<std::size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v) {
        int same0 = 0, same1 = 0;
        for (int u : g.adj[static_cast<std::size_t>(v)])
            if (assigned[static_cast<std::size_t>(u)]) {
                if (side[static_cast<std::size_t>(u)] == 0)
                    ++same0;
                else
                    ++same1;
            }
        side[static_cast<std::size_t>(v)] = same0 <= same1 ? 0 : 1;
        assigned[static_cast<std::size_t>(v)] = 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.n; ++v) {
            int same = 0, cross = 0;
            for (int u : g.adj[static_cast<std::size_t>(v)]) {
                if (side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)])
                    ++same;
                else
                    ++cross;
            }
            if (same > cross) {
                side[static_cast<std::size_t>(v)] = side[static_cast<std::size_t>(v)] == 0 ? 1 : 0;
                changed = true;
            }
        }
    }
    std::vector<std::pair<int, int>> cross_edges;
    for (auto [u, v] : g.edges())
        if (side[static_cast<std::size_t>(u)] != side[static_cast<std::size_t>(v)])
            cross_edges.emplace_back(u, v);
    std::vector<int> a_ids;
    for (int v = 0; v < g.n; ++v)
        if (side[static_cast<std::size_t>(v)] == 0)
            a_ids.push_back(v);
    return BipartiteGraph::make(Graph::from_edges(g.n, cross_edges), a_ids);
}

// Subgraph induced on a vertex subset, relabeled to 0..|verts|-1; orig maps
// new ids back to the input graph's ids.
struct InducedGraph {
    Graph g;
    std::vector<int> orig;
};

inline InducedGraph induced_subgraph(const Graph& g, std::vector<int> verts)
{
    std::sort(verts.begin(), verts.end());
    std::vector<int> local(static_cast<std::size_t>(g.n), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        int v = verts[i];
        if (v < 0 || v >= g.n)
            throw std::invalid_argument("induced_subgraph: vertex out of range");
        if (local[static_cast<std::size_t>(v)] != -1)
            throw std::invalid_argument("induced_subgraph: duplicate vertex");
        local[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (int u : verts)
        for (int w : g.adj[static_cast<std::size_t>(u)])
            if (u < w && local[static_cast<std::size_t>(w)] != -1)
                edges.emplace_back(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(w)]);
    return {Graph::from_edges(static_cast<int>(verts.size()), edges), std::move(verts)};
}

struct InducedBipartite {
    BipartiteGraph bg;
    std::vector<int> orig;
};

// G[a, b]: the bipartite subgraph induced on a u b keeping only a-b edges.
inline InducedBipartite induced_bipartite(const Graph& g, std::vector<int> a, std::vector<int> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<int> verts;
    verts.reserve(a.size() + b.size());
    verts.insert(verts.end(), a.begin(), a.end());
    verts.insert(verts.end(), b.begin(), b.end());
    std::vector<char> in_a_set(static_cast<std::size_t>(g.n), 0);
    std::vector<int> local(static_cast<std::size_t>(g.n), -1);
    std::sort(verts.begin(), verts.end());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        int v = verts[i];
        if (v < 0 || v >= g.n)
            throw std::invalid_argument("induced_bipartite: vertex out of range");
        if (local[static_cast<std::size_t>(v)] != -1)
            throw std::invalid_argument("induced_bipartite: classes overlap at " + std::to_string(v));
        local[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    for (int v : a)
        in_a_set[static_cast<std::size_t>(v)] = 1;
    std::vector<std::pair<int, int>> edges;
    for (int u : a)
        for (int w : g.adj[static_cast<std::size_t>(u)])
            if (local[static_cast<std::size_t>(w)] != -1 && !in_a_set[static_cast<std::size_t>(w)])
                edges.emplace_back(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(w)]);
    std::vector<int> a_local;
    for (int v : a)
        a_local.push_back(local[static_cast<std::size_t>(v)]);
    return {BipartiteGraph::make(Graph::from_edges(static_cast<int>(verts.size()), edges), a_local),
            std::move(verts)};
}

// Repeatedly delete the lowest-id vertex of degree < threshold.
inline std::vector<int> peel_survivors(const Graph& g, const Rational& threshold)
{
    std::vector<int> deg(static_cast<std::size_t>(g.n));
    std::vector<char> alive(static_cast<std::size_t>(g.n), 1);
    for (int v = 0; v < g.n; ++v)
        deg[static_cast<std::size_t>(v)] = g.degree(v);
    for (;;) {
        int pick = -1;
        for (int v = 0; v < g.n; ++v)
            if (alive[static_cast<std::size_t>(v)] && Rational(deg[static_cast<std::size_t>(v)]) < threshold) {
                pick = v;
                break;
            }
        if (pick == -1)
            break;
        alive[static_cast<std::size_t>(pick)] = 0;
        for (int u : g.adj[static_cast<std::size_t>(pick)])
            if (alive[static_cast<std::size_t>(u)])
                --deg[static_cast<std::size_t>(u)];
    }
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (alive[static_cast<std::size_t>(v)])
            out.push_back(v);
    return out;
}

inline InducedGraph min_degree_peel(const Graph& g, const Rational& threshold)
{
    return induced_subgraph(g, peel_survivors(g, threshold));
}

inline InducedBipartite min_degree_peel(const BipartiteGraph& bg, const Rational& threshold)
{
    auto surv = peel_survivors(bg.g, threshold);
    std::vector<int> a, b;
    for (int v : surv)
        (bg.in_a(v) ? a : b).push_back(v);
    return induced_bipartite(bg.g, a, b);
}

// Each class-A vertex keeps exactly `keep` incident edges (lowest neighbor
// ids). Spanning: vertex set unchanged.
inline BipartiteGraph degree_select_count(const BipartiteGraph& bg, int keep)
{
    std::vector<std::pair<int, int>> edges;
    for (int v : bg.class_a) {
        const auto& a = bg.g.adj[static_cast<std::size_t>(v)];
        if (static_cast<int>(a.size()) < keep)
            throw contract_error("degree_select: vertex " + std::to_string(v) + " has degree "
                                 + std::to_string(a.size()) + " < " + std::to_string(keep));
        for (int i = 0; i < keep; ++i)
            edges.emplace_back(std::min(v, a[static_cast<std::size_t>(i)]),
                               std::max(v, a[static_cast<std::size_t>(i)]));
    }
    return BipartiteGraph::make(Graph::from_edges(bg.g.n, edges), bg.class_a);
}

inline BipartiteGraph degree_select(const BipartiteGraph& bg, int k)
{
    return degree_select_count(bg, (k + 1) / 2);
}

inline BipartiteGraph degree_select(const BipartiteGraph& bg, const Rational& k)
{
    return degree_select_count(bg, static_cast<int>((k / Rational(2)).ceil()));
}

struct DegeneracyResult {
    int k = 0;
    std::vector<int> order;  // removal order, a certificate
};

// Smallest k such that every subgraph has a vertex of degree <= k, by
// repeated minimum-degree removal (ties by lowest id).
inline DegeneracyResult degeneracy(const Graph& g)
{
    DegeneracyResult res;
    std::vector<int> deg(static_cast<std::size_t>(g.n));
    std::vector<char> alive(static_cast<std::size_t>(g.n), 1);
    for (int v = 0; v < g.n; ++v)
        deg[static_cast<std::size_t>(v)] = g.degree(v);
    for (int step = 0; step < g.n; ++step) {
        int pick = -1;
        for (int v = 0; v < g.n; ++v)
            if (alive[static_cast<std::size_t>(v)]
                && (pick == -1 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(pick)]))
                pick = v;
        res.k = std::max(res.k, deg[static_cast<std::size_t>(pick)]);
        res.order.push_back(pick);
        alive[static_cast<std::size_t>(pick)] = 0;
        for (int u : g.adj[static_cast<std::size_t>(pick)])
            if (alive[static_cast<std::size_t>(u)])
                --deg[static_cast<std::size_t>(u)];
    }
    return res;
}

}  // namespace gf
