#pragma once

#include "girthforge/graph.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace gf {

using ParsedGraph = std::variant<Graph, BipartiteGraph>;

// Edge-list text format:
//   # comment lines allowed anywhere
//   n m
//   u v          (m lines, 0 <= u < v < n)
//   A: i1 i2 ... (optional, marks the bipartite class-A ids)
inline ParsedGraph parse_edgelist_text(std::istream& in, const std::string& name = "<input>")
{
    std::string line;
    int lineno = 0;
    int n = -1;
    long long m = -1, seen = 0;
    std::vector<std::pair<int, int>> edges;
    std::optional<std::vector<int>> a_ids;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ' || sv.back() == '\t'))
            sv.remove_suffix(1);
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t'))
            sv.remove_prefix(1);
        if (sv.empty() || sv.front() == '#')
            continue;
        std::istringstream ss{std::string(sv)};
        auto fail = [&](const std::string& why) {
            throw parse_error(name + ":" + std::to_string(lineno) + ": " + why);
        };
        if (sv.substr(0, 2) == "A:") {
            ss.ignore(2);
            std::vector<int> ids;
            int v;
            while (ss >> v)
                ids.push_back(v);
            if (!ss.eof())
                fail("malformed class line");
            a_ids = std::move(ids);
            continue;
        }
        if (n < 0) {
            if (!(ss >> n >> m) || n < 0 || m < 0)
                fail("expected header 'n m'");
            std::string rest;
            if (ss >> rest)
                fail("trailing tokens after header");
            continue;
        }
        int u, v;
        if (!(ss >> u >> v))
            fail("expected edge 'u v'");
        std::string rest;
        if (ss >> rest)
            fail("trailing tokens after edge");
        if (u == v)
            fail("self-loop " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            fail("vertex id out of range");
        if (u > v)
            fail("edges must be written 'u v' with u < v");
        ++seen;
        if (seen > m)
            fail("more edges than declared");
        edges.emplace_back(u, v);
    }
    if (n < 0)
        throw parse_error(name + ": missing header 'n m'");
    if (seen != m)
        throw parse_error(name + ": declared " + std::to_string(m) + " edges, found "
                          + std::to_string(seen));
    Graph g;
    try {
        g = Graph::from_edges(n, edges);
    } catch (const std::invalid_argument& e) {
        throw parse_error(name + ": " + e.what());
    }
    if (!a_ids)
        return g;
    try {
        return BipartiteGraph::make(std::move(g), *a_ids);
    } catch (const std::invalid_argument& e) {
        throw parse_error(name + ": inconsistent bipartition: " + e.what());
    }
}

inline ParsedGraph parse_edgelist(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error(path + ": cannot open");
    return parse_edgelist_text(in, path);
}

inline std::string emit_edgelist_text(const Graph& g, const std::vector<int>* a_ids = nullptr)
{
    std::ostringstream out;
    out << g.n << " " << g.m << "\n";
    for (auto [u, v] : g.edges())
        out << u << " " << v << "\n";
    if (a_ids) {
        out << "A:";
        for (int v : *a_ids)
            out << " " << v;
        out << "\n";
    }
    return out.str();
}

inline std::string emit_edgelist_text(const BipartiteGraph& bg)
{
    return emit_edgelist_text(bg.g, &bg.class_a);
}

inline void write_file(const std::string& path, const std::string& body)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    out << body;
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

}  // namespace gf
