#pragma once

#include "girthforge/errors.hpp"
#include "girthforge/rational.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace gf {

// Undirected simple graph over vertex ids 0..n-1. Adjacency lists are kept
// sorted; construction rejects self-loops and duplicate edges.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    long long m = 0;

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges)
    {
        if (n < 0)
            throw std::invalid_argument("Graph: negative vertex count");
        Graph g;
        g.n = n;
        g.adj.assign(static_cast<std::size_t>(n), {});
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::invalid_argument("Graph: vertex id out of range: (" + std::to_string(u)
                                            + "," + std::to_string(v) + ")");
            if (u == v)
                throw std::invalid_argument("Graph: self-loop at " + std::to_string(u));
            g.adj[static_cast<std::size_t>(u)].push_back(v);
            g.adj[static_cast<std::size_t>(v)].push_back(u);
        }
        for (int v = 0; v < n; ++v) {
            auto& a = g.adj[static_cast<std::size_t>(v)];
            std::sort(a.begin(), a.end());
            if (std::adjacent_find(a.begin(), a.end()) != a.end())
                throw std::invalid_argument("Graph: duplicate edge at vertex " + std::to_string(v));
        }
        g.m = static_cast<long long>(edges.size());
        return g;
    }

    int degree(int v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }

    bool has_edge(int u, int v) const
    {
        const auto& a = adj[static_cast<std::size_t>(u)];
        return std::binary_search(a.begin(), a.end(), v);
    }

    // edges as (u, v) with u < v, lexicographically sorted
    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(m));
        for (int u = 0; u < n; ++u)
            for (int v : adj[static_cast<std::size_t>(u)])
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

    long long degree_sum() const
    {
        long long s = 0;
        for (int v = 0; v < n; ++v)
            s += degree(v);
        return s;
    }

    int max_degree() const
    {
        int d = 0;
        for (int v = 0; v < n; ++v)
            d = std::max(d, degree(v));
        return d;
    }

    Rational average_degree() const
    {
        if (n == 0)
            return Rational(0);
        return Rational(2 * m, n);
    }
};

// Graph plus a two-class vertex partition; every edge must cross.
struct BipartiteGraph {
    Graph g;
    std::vector<int> class_a;
    std::vector<int> class_b;
    std::vector<char> side;  // 0 = A, 1 = B

    static BipartiteGraph make(Graph graph, std::vector<int> a_ids)
    {
        BipartiteGraph bg;
        bg.side.assign(static_cast<std::size_t>(graph.n), 1);
        std::sort(a_ids.begin(), a_ids.end());
        for (int v : a_ids) {
            if (v < 0 || v >= graph.n)
                throw std::invalid_argument("BipartiteGraph: class id out of range");
            bg.side[static_cast<std::size_t>(v)] = 0;
        }
        for (int u = 0; u < graph.n; ++u)
            for (int v : graph.adj[static_cast<std::size_t>(u)])
                if (bg.side[static_cast<std::size_t>(u)] == bg.side[static_cast<std::size_t>(v)])
                    throw std::invalid_argument("BipartiteGraph: edge (" + std::to_string(u) + ","
                                                + std::to_string(v) + ") inside one class");
        bg.class_a = std::move(a_ids);
        for (int v = 0; v < graph.n; ++v)
            if (bg.side[static_cast<std::size_t>(v)] == 1)
                bg.class_b.push_back(v);
        bg.g = std::move(graph);
        return bg;
    }

    bool in_a(int v) const { return side[static_cast<std::size_t>(v)] == 0; }

    // swap the two classes
    BipartiteGraph flipped() const
    {
        BipartiteGraph bg;
        bg.g = g;
        bg.class_a = class_b;
        bg.class_b = class_a;
        bg.side.resize(side.size());
        for (std::size_t i = 0; i < side.size(); ++i)
            bg.side[i] = side[i] == 0 ? 1 : 0;
        return bg;
    }
};

}  // namespace gf
