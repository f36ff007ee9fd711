#pragma once

#include "girthforge/graph_ops.hpp"

#include <chrono>
#include <optional>
#include <queue>
#include <vector>

namespace gf {

// Hard caps for the exhaustive searches. Over-budget inputs are refused
// with budget_error; the oracle never silently approximates.
struct OracleBudget {
    int max_vertices = 12;
    int max_edges = 24;
    double time_limit_seconds = 60.0;
};

namespace oracle_detail {

    struct Deadline {
        std::chrono::steady_clock::time_point end;
        explicit Deadline(double seconds)
            : end(std::chrono::steady_clock::now()
                  + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(seconds)))
        {
        }
        void check() const
        {
            if (std::chrono::steady_clock::now() > end)
                throw budget_error("oracle: time budget exceeded");
        }
    };

    // Branch and bound over edges in id order; `mat` is the adjacency matrix
    // of the chosen edge set.
    inline void max_c4free_rec(const std::vector<std::pair<int, int>>& edges, std::size_t idx,
                               std::vector<std::vector<char>>& mat,
                               std::vector<int>& chosen, int count,
                               int& best, std::vector<std::pair<int, int>>& best_edges,
                               const Deadline& dl)
    {
        if (count + static_cast<int>(edges.size() - idx) <= best)
            return;
        if (idx == edges.size()) {
            if (count > best) {
                best = count;
                best_edges.clear();
                for (int i : chosen)
                    best_edges.push_back(edges[static_cast<std::size_t>(i)]);
            }
            return;
        }
        dl.check();
        auto [u, v] = edges[idx];
        // does adding uv close a C4 u-v-x-w-u within the chosen set?
        bool closes = false;
        int n = static_cast<int>(mat.size());
        for (int w = 0; w < n && !closes; ++w) {
            if (!mat[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] || w == v)
                continue;
            for (int x = 0; x < n; ++x)
                if (x != u && x != w && mat[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)]
                    && mat[static_cast<std::size_t>(w)][static_cast<std::size_t>(x)]) {
                    closes = true;
                    break;
                }
        }
        if (!closes) {
            mat[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
            mat[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
            chosen.push_back(static_cast<int>(idx));
            max_c4free_rec(edges, idx + 1, mat, chosen, count + 1, best, best_edges, dl);
            chosen.pop_back();
            mat[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 0;
            mat[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 0;
        }
        max_c4free_rec(edges, idx + 1, mat, chosen, count, best, best_edges, dl);
    }

}  // namespace oracle_detail

struct MaxC4FreeResult {
    int count = 0;
    std::vector<std::pair<int, int>> witness;
};

// Exact maximum edge count over all C4-free spanning subgraphs.
inline MaxC4FreeResult max_c4free_edges(const Graph& g, const OracleBudget& b = {})
{
    if (g.n > b.max_vertices || g.m > b.max_edges)
        throw budget_error("max_c4free_edges: input exceeds oracle budget ("
                           + std::to_string(g.n) + " vertices, " + std::to_string(g.m) + " edges)");
    oracle_detail::Deadline dl(b.time_limit_seconds);
    auto edges = g.edges();
    std::vector<std::vector<char>> mat(static_cast<std::size_t>(g.n),
                                       std::vector<char>(static_cast<std::size_t>(g.n), 0));
    std::vector<int> chosen;
    MaxC4FreeResult res;
    res.count = -1;
    oracle_detail::max_c4free_rec(edges, 0, mat, chosen, 0, res.count, res.witness, dl);
    if (res.count < 0)
        res.count = 0;
    if (!is_c4_free(Graph::from_edges(g.n, res.witness)))
        throw std::logic_error("max_c4free_edges: witness failed re-verification");
    return res;
}

struct BestAvgResult {
    Rational value;
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;  // in input ids
};

// Exact maximum average degree over all C4-free subgraphs (vertex subset
// plus edge subset), exhaustive over vertex subsets.
inline BestAvgResult best_c4free_avg_degree(const Graph& g, const OracleBudget& b = {})
{
    if (g.n > b.max_vertices || g.m > b.max_edges)
        throw budget_error("best_c4free_avg_degree: input exceeds oracle budget");
    BestAvgResult best;
    best.value = Rational(0);
    for (unsigned mask = 1; mask < (1u << g.n); ++mask) {
        std::vector<int> verts;
        for (int v = 0; v < g.n; ++v)
            if (mask & (1u << v))
                verts.push_back(v);
        auto sub = induced_subgraph(g, verts);
        auto mc = max_c4free_edges(sub.g, b);
        Rational avg(2LL * mc.count, static_cast<long long>(verts.size()));
        if (avg > best.value) {
            best.value = avg;
            best.vertices = verts;
            best.edges.clear();
            for (auto [u, v] : mc.witness)
                best.edges.emplace_back(sub.orig[static_cast<std::size_t>(u)],
                                        sub.orig[static_cast<std::size_t>(v)]);
        }
    }
    return best;
}

// Independent girth reference: exhaustive DFS enumeration of simple cycles
// anchored at their minimum vertex, depth-capped at min(n, 12); when the
// graph is cyclic but all cycles are longer, fall back to per-vertex BFS.
inline std::optional<int> shortest_cycle_reference(const Graph& g)
{
    int cap = std::min(g.n, 12);
    int best = std::numeric_limits<int>::max();
    std::vector<char> on_path(static_cast<std::size_t>(g.n), 0);
    std::vector<int> path;
    auto dfs = [&](auto&& self, int s, int v) -> void {
        for (int w : g.adj[static_cast<std::size_t>(v)]) {
            if (w == s && static_cast<int>(path.size()) >= 3) {
                best = std::min(best, static_cast<int>(path.size()));
            } else if (w > s && !on_path[static_cast<std::size_t>(w)]
                       && static_cast<int>(path.size()) < std::min(cap, best - 1)) {
                on_path[static_cast<std::size_t>(w)] = 1;
                path.push_back(w);
                self(self, s, w);
                path.pop_back();
                on_path[static_cast<std::size_t>(w)] = 0;
            }
        }
    };
    for (int s = 0; s < g.n; ++s) {
        path.assign(1, s);
        on_path.assign(static_cast<std::size_t>(g.n), 0);
        on_path[static_cast<std::size_t>(s)] = 1;
        dfs(dfs, s, s);
    }
    if (best != std::numeric_limits<int>::max())
        return best;
    // cycle existence: m > n - (number of components) iff some cycle exists
    std::vector<int> comp(static_cast<std::size_t>(g.n), -1);
    int ncomp = 0;
    for (int s = 0; s < g.n; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1)
            continue;
        std::queue<int> q;
        q.push(s);
        comp[static_cast<std::size_t>(s)] = ncomp;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : g.adj[static_cast<std::size_t>(u)])
                if (comp[static_cast<std::size_t>(w)] == -1) {
                    comp[static_cast<std::size_t>(w)] = ncomp;
                    q.push(w);
                }
        }
        ++ncomp;
    }
    if (g.m <= g.n - ncomp)
        return std::nullopt;  // forest
    // some cycle longer than the DFS cap: BFS fallback
    int fb = std::numeric_limits<int>::max();
    for (int s = 0; s < g.n; ++s) {
        std::vector<int> dist(static_cast<std::size_t>(g.n), -1), par(static_cast<std::size_t>(g.n), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : g.adj[static_cast<std::size_t>(u)]) {
                if (dist[static_cast<std::size_t>(w)] == -1) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    par[static_cast<std::size_t>(w)] = u;
                    q.push(w);
                } else if (w != par[static_cast<std::size_t>(u)]) {
                    fb = std::min(fb, dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(w)] + 1);
                }
            }
        }
    }
    return fb;
}

struct ThreeRegularResult {
    bool found = false;
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;
};

namespace oracle_detail {

    inline bool three_reg_rec(const std::vector<std::pair<int, int>>& edges, std::size_t idx,
                              std::vector<int>& deg, std::vector<int>& rem,
                              std::vector<std::size_t>& chosen, const Deadline& dl)
    {
        for (std::size_t v = 0; v < deg.size(); ++v)
            if (deg[v] > 3 || deg[v] + rem[v] < 3)
                return false;
        if (idx == edges.size()) {
            for (std::size_t v = 0; v < deg.size(); ++v)
                if (deg[v] != 3)
                    return false;
            return true;
        }
        dl.check();
        auto [u, v] = edges[idx];
        --rem[static_cast<std::size_t>(u)];
        --rem[static_cast<std::size_t>(v)];
        if (deg[static_cast<std::size_t>(u)] < 3 && deg[static_cast<std::size_t>(v)] < 3) {
            ++deg[static_cast<std::size_t>(u)];
            ++deg[static_cast<std::size_t>(v)];
            chosen.push_back(idx);
            if (three_reg_rec(edges, idx + 1, deg, rem, chosen, dl))
                return true;
            chosen.pop_back();
            --deg[static_cast<std::size_t>(u)];
            --deg[static_cast<std::size_t>(v)];
        }
        if (three_reg_rec(edges, idx + 1, deg, rem, chosen, dl))
            return true;
        ++rem[static_cast<std::size_t>(u)];
        ++rem[static_cast<std::size_t>(v)];
        return false;
    }

}  // namespace oracle_detail

// Exhaustive search for a vertex subset with an edge subset where every
// chosen vertex has degree exactly 3.
inline ThreeRegularResult has_3_regular_subgraph(const Graph& g, const OracleBudget& b = {})
{
    if (g.n > b.max_vertices || g.m > b.max_edges)
        throw budget_error("has_3_regular_subgraph: input exceeds oracle budget");
    oracle_detail::Deadline dl(b.time_limit_seconds);
    for (unsigned mask = 1; mask < (1u << g.n); ++mask) {
        std::vector<int> verts;
        for (int v = 0; v < g.n; ++v)
            if (mask & (1u << v))
                verts.push_back(v);
        if (verts.size() < 4 || verts.size() % 2 != 0)
            continue;
        auto sub = induced_subgraph(g, verts);
        bool feasible = true;
        for (int v = 0; v < sub.g.n; ++v)
            if (sub.g.degree(v) < 3)
                feasible = false;
        if (!feasible)
            continue;
        auto edges = sub.g.edges();
        std::vector<int> deg(static_cast<std::size_t>(sub.g.n), 0);
        std::vector<int> rem(static_cast<std::size_t>(sub.g.n), 0);
        for (auto [u, v] : edges) {
            ++rem[static_cast<std::size_t>(u)];
            ++rem[static_cast<std::size_t>(v)];
        }
        std::vector<std::size_t> chosen;
        if (oracle_detail::three_reg_rec(edges, 0, deg, rem, chosen, dl)) {
            ThreeRegularResult res;
            res.found = true;
            res.vertices = verts;
            for (std::size_t i : chosen)
                res.edges.emplace_back(sub.orig[static_cast<std::size_t>(edges[i].first)],
                                       sub.orig[static_cast<std::size_t>(edges[i].second)]);
            return res;
        }
    }
    return {};
}

}  // namespace gf
