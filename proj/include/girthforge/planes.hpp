#pragma once

#include "girthforge/graph_ops.hpp"

#include <array>
#include <optional>
#include <vector>

namespace gf {

// Trial division; intended range is desk scale (x < 10^9).
inline bool is_prime(long long x)
{
    if (x < 0)
        throw std::invalid_argument("is_prime: negative input");
    if (x < 2)
        return false;
    for (long long p = 2; p * p <= x; ++p)
        if (x % p == 0)
            return false;
    return true;
}

inline std::optional<long long> prime_in_range(long long lo, long long hi)
{
    if (lo < 2)
        throw std::invalid_argument("prime_in_range: lo must be >= 2");
    for (long long x = lo; x <= hi; ++x)
        if (is_prime(x))
            return x;
    return std::nullopt;
}

// PG(2, q) for prime q: points and lines are nonzero triples over F_q up to
// scaling, canonically with the first nonzero coordinate equal to 1 and
// listed in lexicographic order. Point p lies on line l iff <p, l> = 0
// (mod q); two distinct points share exactly one line, which forces girth
// >= 6 in the incidence graph.
struct ProjectivePlane {
    long long q = 0;
    std::vector<std::array<long long, 3>> points;  // lines use the same list
    // incidence[i] = sorted line indices through point i
    std::vector<std::vector<int>> incidence;

    std::size_t size() const { return points.size(); }  // q^2 + q + 1
};

inline ProjectivePlane build_plane(long long q)
{
    if (!is_prime(q))
        throw std::invalid_argument("build_plane: order " + std::to_string(q)
                                    + " is not prime (prime powers unsupported)");
    ProjectivePlane pl;
    pl.q = q;
    // canonical representatives: (0,0,1), (0,1,c), (1,b,c)
    pl.points.push_back({0, 0, 1});
    for (long long c = 0; c < q; ++c)
        pl.points.push_back({0, 1, c});
    for (long long b = 0; b < q; ++b)
        for (long long c = 0; c < q; ++c)
            pl.points.push_back({1, b, c});
    std::sort(pl.points.begin(), pl.points.end());
    pl.incidence.assign(pl.points.size(), {});
    for (std::size_t i = 0; i < pl.points.size(); ++i)
        for (std::size_t j = 0; j < pl.points.size(); ++j) {
            const auto& p = pl.points[i];
            const auto& l = pl.points[j];
            if ((p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0)
                pl.incidence[i].push_back(static_cast<int>(j));
        }
    return pl;
}

// Bipartite point/line incidence graph: points are 0..N-1 (class A), lines
// N..2N-1. (q+1)-regular with girth 6.
inline BipartiteGraph incidence_graph(const ProjectivePlane& pl)
{
    int N = static_cast<int>(pl.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < N; ++i)
        for (int j : pl.incidence[static_cast<std::size_t>(i)])
            edges.emplace_back(i, N + j);
    std::vector<int> a_ids(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
        a_ids[static_cast<std::size_t>(i)] = i;
    return BipartiteGraph::make(Graph::from_edges(2 * N, edges), a_ids);
}

// C4-free subgraph of K_{s,s}, s = 4k^2, with dense core: the incidence
// graph of a plane of prime order q in [k, 2k-1], padded with isolated
// vertices up to s per class. The certified guarantee is on the unpadded
// core, whose average degree is q+1 >= k.
struct ReimanEmbedding {
    BipartiteGraph graph;      // padded, s vertices per class
    long long q = 0;           // plane order used
    int core_per_class = 0;    // q^2 + q + 1
    Rational unpadded_average; // q + 1
    Rational padded_average;
};

inline ReimanEmbedding reiman_embed(long long k)
{
    if (k < 2)
        throw std::invalid_argument("reiman_embed: k must be >= 2");
    auto q_opt = prime_in_range(k, 2 * k - 1);
    if (!q_opt)
        throw std::logic_error("reiman_embed: no prime in [k, 2k-1]");
    long long q = *q_opt;
    auto inc = incidence_graph(build_plane(q));
    long long s = 4 * k * k;
    int N = static_cast<int>(inc.class_a.size());
    // core points keep ids 0..N-1; core lines move to s..s+N-1; padding ids
    // are the highest in each class
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : inc.g.edges()) {
        int p = std::min(u, v);
        int l = std::max(u, v) - N;
        edges.emplace_back(p, static_cast<int>(s) + l);
    }
    std::vector<int> a_ids(static_cast<std::size_t>(s));
    for (long long i = 0; i < s; ++i)
        a_ids[static_cast<std::size_t>(i)] = static_cast<int>(i);
    ReimanEmbedding r;
    r.graph = BipartiteGraph::make(Graph::from_edges(static_cast<int>(2 * s), edges), a_ids);
    r.q = q;
    r.core_per_class = N;
    r.unpadded_average = Rational(2 * r.graph.g.m, 2 * N);
    r.padded_average = r.graph.g.average_degree();
    return r;
}

}  // namespace gf
