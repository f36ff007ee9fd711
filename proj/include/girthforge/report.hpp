#pragma once

#include "girthforge/extraction.hpp"
#include "girthforge/io.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace gf {

// FNV-1a, used only to fingerprint the input text in reports.
inline std::string fnv1a_digest(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Reports are ordered JSON so identical runs serialize byte-identically;
// wall_time_ms is the only field expected to differ between reruns.
using Json = nlohmann::ordered_json;

inline Json trace_json(const PipelineTrace& trace)
{
    Json j;
    j["t"] = trace.t;
    j["mode"] = trace.mode;
    Json recs = Json::array();
    for (const auto& r : trace.records) {
        Json rec;
        rec["index"] = r.index;
        rec["witness_vertex"] = r.witness_vertex;
        rec["a_size"] = r.a_size;
        rec["b_size"] = r.b_size;
        rec["density"] = r.density.str();
        recs.push_back(std::move(rec));
    }
    j["iterations"] = std::move(recs);
    j["final_class_a"] = trace.final_class_a;
    j["final_class_b"] = trace.final_class_b;
    j["outcome"] = trace.outcome_kind;
    j["achieved"] = trace.achieved.str();
    j["guarantee_met"] = trace.guarantee_met;
    j["harvested"] = trace.harvested;
    if (trace.harvested) {
        j["harvest_left"] = trace.harvest_left;
        j["harvest_right"] = trace.harvest_right;
        Json he = Json::array();
        for (int u : trace.harvest_left)
            for (int v : trace.harvest_right)
                he.push_back(Json::array({u, v}));
        j["harvest_edges"] = std::move(he);
    }
    return j;
}

struct ReportTimer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long elapsed_ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

inline Json extraction_report(const std::string& command, const std::string& input_text,
                              const SamplerConfig& cfg, const PipelineResult& pr,
                              long long wall_time_ms)
{
    Json j;
    j["command"] = command;
    j["input_digest"] = fnv1a_digest(input_text);
    j["seed"] = cfg.seed;
    j["max_retries"] = cfg.max_retries;
    j["trace"] = trace_json(pr.trace);
    if (const auto* res = std::get_if<C4FreeResult>(&pr.outcome)) {
        j["result"]["kind"] = "c4free";
        j["result"]["achieved"] = res->achieved.str();
        j["result"]["guarantee_met"] = res->guarantee_met;
        j["result"]["hypotheses_held"] = res->hypotheses_held;
        j["result"]["seed_used"] = res->seed_used;
        j["result"]["vertices"] = res->orig;
        Json edges = Json::array();
        for (auto [u, v] : res->subgraph.edges())
            edges.push_back(Json::array({res->orig[static_cast<std::size_t>(u)],
                                         res->orig[static_cast<std::size_t>(v)]}));
        j["result"]["edges"] = std::move(edges);
    } else {
        const auto& w = std::get<NeighborhoodWitness>(pr.outcome);
        j["result"]["kind"] = "witness";
        j["result"]["vertex"] = w.v;
        j["result"]["a_prime"] = w.a_prime;
        j["result"]["b_prime"] = w.b_prime;
        j["result"]["density"] = w.density.str();
    }
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

}  // namespace gf
