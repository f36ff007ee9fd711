#pragma once

#include "girthforge/graph_ops.hpp"
#include "girthforge/planes.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace gf {

// Identical seed and inputs give bit-identical outcomes. Retries re-sample
// with seed+1, seed+2, ... and keep the best result (lowest seed wins ties).
struct SamplerConfig {
    std::uint64_t seed = 0;
    int max_retries = 100;
};

inline std::vector<int> identity_map(int n)
{
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        m[static_cast<std::size_t>(i)] = i;
    return m;
}

inline std::vector<int> compose_map(const std::vector<int>& outer, const std::vector<int>& inner)
{
    std::vector<int> r(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i)
        r[i] = outer[static_cast<std::size_t>(inner[i])];
    return r;
}

inline std::vector<int> apply_map(const std::vector<int>& m, const std::vector<int>& ids)
{
    std::vector<int> r(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        r[i] = m[static_cast<std::size_t>(ids[i])];
    return r;
}

// A certified C4-free subgraph; `orig` maps its vertex ids back to the ids
// of the graph the producing operation was called on.
struct C4FreeResult {
    Graph subgraph;
    std::vector<int> orig;
    Rational achieved;
    bool guarantee_met = false;
    bool hypotheses_held = true;
    std::uint64_t seed_used = 0;
};

// Dichotomy case (1): a vertex v and sets A' in N(v), B' avoiding v, with a
// dense bipartite graph between them. Ids refer to the operation's input.
struct NeighborhoodWitness {
    int v = -1;
    std::vector<int> a_prime;
    std::vector<int> b_prime;
    Rational density;
};

// Dichotomy case (2): spanning subgraph with all B-codegrees <= lambda and
// d(H) >= d(G)/(lambda+1). degree_at_processing[i] records d_{G_{i-1}}(v_i),
// which must equal d_H(v_i): edges at processed vertices are never removed
// later.
struct SpanningLowCodegree {
    BipartiteGraph h;
    ScaledPower codegree_bound;
    std::vector<int> processed;
    std::vector<int> degree_at_processing;
};

using CodegreeOutcome = std::variant<NeighborhoodWitness, SpanningLowCodegree>;

// The codegree dichotomy, one pass over B in id order. Exact thresholds; works
// for rational lambda and for fractional-power lambdas like d^{1/5}.
inline CodegreeOutcome codegree_reduce(const BipartiteGraph& bg, const ScaledPower& lambda)
{
    if (!lambda.geq(Rational(1)))
        throw std::invalid_argument("codegree_reduce: lambda must be >= 1");
    std::vector<std::set<int>> adj(static_cast<std::size_t>(bg.g.n));
    for (int v = 0; v < bg.g.n; ++v)
        adj[static_cast<std::size_t>(v)].insert(bg.g.adj[static_cast<std::size_t>(v)].begin(),
                                                bg.g.adj[static_cast<std::size_t>(v)].end());
    std::vector<int> processed, degree_at;
    const auto& order = bg.class_b;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int vi = order[i];
        std::vector<int> nv(adj[static_cast<std::size_t>(vi)].begin(), adj[static_cast<std::size_t>(vi)].end());
        std::vector<int> vset;
        long long cross_edges = 0;
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            int vj = order[j];
            int cnt = 0;
            for (int x : nv)
                if (adj[static_cast<std::size_t>(vj)].count(x))
                    ++cnt;
            if (cnt > 0 && lambda.leq(Rational(cnt))) {
                vset.push_back(vj);
                cross_edges += cnt;
            }
        }
        long long dv = static_cast<long long>(nv.size());
        if (!vset.empty() && lambda.leq(Rational(cross_edges, dv))) {
            NeighborhoodWitness w;
            w.v = vi;
            w.a_prime = nv;
            w.b_prime = vset;
            w.density = Rational(2 * cross_edges,
                                 static_cast<long long>(nv.size() + vset.size()));
            return w;
        }
        for (int vj : vset)
            for (int x : nv)
                if (adj[static_cast<std::size_t>(vj)].erase(x))
                    adj[static_cast<std::size_t>(x)].erase(vj);
        processed.push_back(vi);
        degree_at.push_back(static_cast<int>(adj[static_cast<std::size_t>(vi)].size()));
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < bg.g.n; ++u)
        for (int w : adj[static_cast<std::size_t>(u)])
            if (u < w)
                edges.emplace_back(u, w);
    SpanningLowCodegree sp;
    sp.h = BipartiteGraph::make(Graph::from_edges(bg.g.n, edges), bg.class_a);
    sp.codegree_bound = lambda;
    sp.processed = std::move(processed);
    sp.degree_at_processing = std::move(degree_at);
    return sp;
}

namespace extraction_detail {

    // Las Vegas best-of-N retry loop over a sampling function. The sampled
    // graph is altered to C4-freeness; the highest average degree wins, and
    // the lowest seed wins ties.
    struct Sampled {
        Graph g;
        std::vector<int> orig;
    };

    template <typename SampleFn>
    inline C4FreeResult best_of_retries(const SamplerConfig& cfg, SampleFn&& sample)
    {
        C4FreeResult best;
        bool have = false;
        int tries = std::max(1, cfg.max_retries);
        for (int r = 0; r < tries; ++r) {
            std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
            std::mt19937_64 rng(seed);
            Sampled s = sample(rng);
            Graph altered = c4_alteration(std::move(s.g));
            Rational avg = altered.average_degree();
            if (!have || avg > best.achieved) {
                best.subgraph = std::move(altered);
                best.orig = std::move(s.orig);
                best.achieved = avg;
                best.seed_used = seed;
                have = true;
            }
        }
        return best;
    }

    inline Graph keep_edges_bernoulli(const Graph& g, const ScaledPower& p, std::mt19937_64& rng)
    {
        std::vector<std::pair<int, int>> kept;
        for (auto e : g.edges())
            if (p.bernoulli(rng()))
                kept.push_back(e);
        return Graph::from_edges(g.n, kept);
    }

}  // namespace extraction_detail

// Edge sampling at p = 3 d^{-1/2} plus alteration, for low-codegree inputs.
// Output is always C4-free; the d^{1/4} bound is reported through
// guarantee_met and asserted only when the hypotheses held.
inline C4FreeResult sparsify_smallcodeg(const BipartiteGraph& bg, const Rational& d,
                                        const SamplerConfig& cfg)
{
    bool hyp = bg.class_a.size() >= bg.class_b.size();
    ScaledPower codeg_cap = ScaledPower::power(Rational(1), d, 1, 5);
    for (std::size_t i = 0; i < bg.class_b.size() && hyp; ++i)
        for (std::size_t j = i + 1; j < bg.class_b.size() && hyp; ++j)
            if (!codeg_cap.geq(Rational(codegree(bg.g, bg.class_b[i], bg.class_b[j]))))
                hyp = false;
    for (int v : bg.class_a)
        if (Rational(bg.g.degree(v)) > d)
            hyp = false;
    if (!ScaledPower::power(Rational(1), d, 3, 4).leq(bg.g.average_degree()))
        hyp = false;
    ScaledPower p = ScaledPower::power(Rational(3), d, -1, 2);
    C4FreeResult res = extraction_detail::best_of_retries(cfg, [&](std::mt19937_64& rng) {
        return extraction_detail::Sampled{extraction_detail::keep_edges_bernoulli(bg.g, p, rng),
                                          identity_map(bg.g.n)};
    });
    res.hypotheses_held = hyp;
    res.guarantee_met = hyp && ScaledPower::power(Rational(1), d, 1, 4).leq(res.achieved);
    return res;
}

// Edge sampling at p = Delta^{-3/4}/2 plus alteration, for bounded-degree
// inputs.
inline C4FreeResult sparsify_bounded_degree(const Graph& g, const SamplerConfig& cfg)
{
    if (g.m == 0) {
        C4FreeResult res;
        res.subgraph = g;
        res.orig = identity_map(g.n);
        res.achieved = Rational(0);
        res.guarantee_met = true;
        res.seed_used = cfg.seed;
        return res;
    }
    Rational delta(g.max_degree());
    Rational d = g.average_degree();
    ScaledPower p = ScaledPower::power(Rational(1, 2), delta, -3, 4);
    C4FreeResult res = extraction_detail::best_of_retries(cfg, [&](std::mt19937_64& rng) {
        return extraction_detail::Sampled{extraction_detail::keep_edges_bernoulli(g, p, rng),
                                          identity_map(g.n)};
    });
    bool hyp = ScaledPower::power(Rational(1), delta, 3, 4).leq(d);  // d >= Delta^{3/4}
    res.hypotheses_held = hyp;
    res.guarantee_met =
        hyp && ScaledPower::power(d / Rational(4), delta, -3, 4).leq(res.achieved);
    return res;
}

// Class-A vertex sampling at p = 1/d^6 plus alteration, for very
// unbalanced bipartite graphs.
inline C4FreeResult sparsify_skew(const BipartiteGraph& bg, const Rational& d,
                                  const SamplerConfig& cfg)
{
    bool hyp = d >= Rational(2);
    if (!ScaledPower::power(Rational(static_cast<long long>(bg.class_b.size())), d, 6, 1)
             .leq(Rational(static_cast<long long>(bg.class_a.size()))))
        hyp = false;  // |A| >= d^6 |B|
    for (std::size_t i = 0; i < bg.class_b.size() && hyp; ++i)
        for (std::size_t j = i + 1; j < bg.class_b.size() && hyp; ++j)
            if (Rational(codegree(bg.g, bg.class_b[i], bg.class_b[j])) > d)
                hyp = false;
    for (int v : bg.class_a)
        if (Rational(bg.g.degree(v)) > d)
            hyp = false;
    ScaledPower p = d.is_zero() ? ScaledPower::rational(Rational(1))
                                : ScaledPower::power(Rational(1), d, -6, 1);
    Rational input_avg = bg.g.average_degree();
    C4FreeResult res = extraction_detail::best_of_retries(cfg, [&](std::mt19937_64& rng) {
        std::vector<int> a_sample;
        for (int v : bg.class_a)
            if (p.bernoulli(rng()))
                a_sample.push_back(v);
        auto ind = induced_bipartite(bg.g, a_sample, bg.class_b);
        return extraction_detail::Sampled{std::move(ind.bg.g), std::move(ind.orig)};
    });
    res.hypotheses_held = hyp;
    res.guarantee_met = hyp && res.achieved >= input_avg / Rational(5);
    return res;
}

// Split outcomes: either a very unbalanced dense part or a dense part
// with polynomially bounded maximum degree. `orig` maps to the input bg.
struct UnbalancedPart {
    BipartiteGraph h;
    std::vector<int> orig;
};

struct LowMaxDeg {
    BipartiteGraph h;
    std::vector<int> orig;
};

using SplitOutcome = std::variant<UnbalancedPart, LowMaxDeg>;

inline SplitOutcome split_unbalanced_or_lowdeg(const BipartiteGraph& bg, const Rational& k)
{
    if (bg.g.average_degree() < k)
        throw contract_error("split_unbalanced_or_lowdeg: d(G) = "
                             + bg.g.average_degree().str() + " < k = " + k.str());
    auto peeled = min_degree_peel(bg, k / Rational(2));
    if (peeled.bg.g.n == 0)
        throw std::logic_error("split_unbalanced_or_lowdeg: peel emptied the graph");
    BipartiteGraph base = peeled.bg.class_a.size() >= peeled.bg.class_b.size()
                              ? peeled.bg
                              : peeled.bg.flipped();
    BipartiteGraph g1 = degree_select(base, k);
    ScaledPower k7 = ScaledPower::power(Rational(1), k, 7, 1);
    std::vector<int> b_heavy, b_light;
    for (int v : g1.class_b)
        (k7.leq(Rational(g1.g.degree(v))) ? b_heavy : b_light).push_back(v);
    auto part_light = induced_bipartite(g1.g, g1.class_a, b_light);
    Rational quarter = k / Rational(4);
    if (part_light.bg.g.average_degree() >= quarter)
        return LowMaxDeg{std::move(part_light.bg), compose_map(peeled.orig, part_light.orig)};
    auto part_heavy = induced_bipartite(g1.g, g1.class_a, b_heavy);
    if (part_heavy.bg.g.average_degree() >= quarter)
        return UnbalancedPart{std::move(part_heavy.bg), compose_map(peeled.orig, part_heavy.orig)};
    throw std::logic_error("split_unbalanced_or_lowdeg: neither part reached density k/4");
}

// Max-degree-reduction output. Not C4-free yet; maximum degree is at most k on both
// sides, average degree reported against the k/(400 log2 k) bound.
struct C4FreeCandidate {
    BipartiteGraph h;
    std::vector<int> orig;
    Rational achieved;
    bool guarantee_met = false;
    std::uint64_t seed_used = 0;
};

inline C4FreeCandidate reduce_max_degree(const BipartiteGraph& bg, const Rational& k,
                                         const SamplerConfig& cfg)
{
    // drop isolated vertices first
    std::vector<int> live_a, live_b;
    for (int v : bg.class_a)
        if (bg.g.degree(v) > 0)
            live_a.push_back(v);
    for (int v : bg.class_b)
        if (bg.g.degree(v) > 0)
            live_b.push_back(v);
    auto live = induced_bipartite(bg.g, live_a, live_b);
    const BipartiteGraph& g = live.bg;
    std::string failures;
    if (g.g.n == 0)
        failures += " graph is empty;";
    ScaledPower k7 = ScaledPower::power(Rational(1), k, 7, 1);
    if (g.g.n > 0 && !k7.geq(Rational(g.g.max_degree())))
        failures += " max degree exceeds k^7;";
    if (g.g.average_degree() < k / Rational(4))
        failures += " average degree below k/4;";
    for (int v : g.class_a)
        if (Rational(g.g.degree(v)) > k) {
            failures += " class-A degree exceeds k;";
            break;
        }
    if (!failures.empty())
        throw contract_error("reduce_max_degree: hypothesis failed:" + failures);

    // dyadic degree buckets over B; pick the one holding the most edges
    long long max_bucket = 0;
    for (int v : g.class_b)
        max_bucket = std::max(max_bucket, static_cast<long long>(std::bit_width(
                                              static_cast<unsigned long long>(g.g.degree(v)))));
    std::vector<long long> bucket_edges(static_cast<std::size_t>(max_bucket) + 1, 0);
    for (int v : g.class_b)
        bucket_edges[static_cast<std::size_t>(
            std::bit_width(static_cast<unsigned long long>(g.g.degree(v))))] += g.g.degree(v);
    std::size_t pick = 1;
    for (std::size_t i = 1; i < bucket_edges.size(); ++i)
        if (bucket_edges[i] > bucket_edges[pick])
            pick = i;
    std::vector<int> b_bucket;
    for (int v : g.class_b)
        if (static_cast<std::size_t>(std::bit_width(static_cast<unsigned long long>(g.g.degree(v))))
            == pick)
            b_bucket.push_back(v);
    auto gi = induced_bipartite(g.g, g.class_a, b_bucket);
    std::vector<int> gi_orig = compose_map(live.orig, gi.orig);
    long long dd = 1LL << (pick - 1);  // bucket degrees lie in [dd, 2*dd)

    C4FreeCandidate out;
    if (Rational(2 * dd) <= k) {
        out.h = std::move(gi.bg);
        out.orig = std::move(gi_orig);
        out.achieved = out.h.g.average_degree();
        out.seed_used = cfg.seed;
        out.guarantee_met = meets_log_guarantee(out.achieved, k);
        return out;
    }
    ScaledPower p = ScaledPower::rational(k / Rational(4 * dd));
    bool have = false;
    int tries = std::max(1, cfg.max_retries);
    for (int r = 0; r < tries; ++r) {
        std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
        std::mt19937_64 rng(seed);
        std::vector<int> a_sample;
        for (int v : gi.bg.class_a)
            if (p.bernoulli(rng()))
                a_sample.push_back(v);
        std::vector<char> in_sample(static_cast<std::size_t>(gi.bg.g.n), 0);
        for (int v : a_sample)
            in_sample[static_cast<std::size_t>(v)] = 1;
        std::vector<int> b_keep;
        for (int v : gi.bg.class_b) {
            long long deg_in = 0;
            for (int u : gi.bg.g.adj[static_cast<std::size_t>(v)])
                if (in_sample[static_cast<std::size_t>(u)])
                    ++deg_in;
            if (Rational(deg_in) <= k)
                b_keep.push_back(v);
        }
        auto h = induced_bipartite(gi.bg.g, a_sample, b_keep);
        Rational avg = h.bg.g.average_degree();
        if (!have || avg > out.achieved) {
            out.h = std::move(h.bg);
            out.orig = compose_map(gi_orig, h.orig);
            out.achieved = avg;
            out.seed_used = seed;
            have = true;
        }
    }
    out.guarantee_met = meets_log_guarantee(out.achieved, k);
    return out;
}

using LowdegOutcome = std::variant<C4FreeResult, UnbalancedPart>;

// Composition: split, then (on the bounded-degree branch)
// reduce the maximum degree and sparsify. The unbalanced branch is handed
// back for the caller's codegree step.
inline LowdegOutcome extract_lowdeg_c4free(const BipartiteGraph& bg, const Rational& k,
                                           const Rational& t, const SamplerConfig& cfg)
{
    if (is_c4_free(bg.g) && bg.g.average_degree() >= t) {
        C4FreeResult res;
        res.subgraph = bg.g;
        res.orig = identity_map(bg.g.n);
        res.achieved = bg.g.average_degree();
        res.guarantee_met = true;
        res.seed_used = cfg.seed;
        return res;
    }
    if (bg.g.average_degree() < k)
        throw contract_error("extract_lowdeg_c4free: d(G) = " + bg.g.average_degree().str()
                             + " < k = " + k.str());
    SplitOutcome split = split_unbalanced_or_lowdeg(bg, k);
    if (auto* up = std::get_if<UnbalancedPart>(&split))
        return std::move(*up);
    auto& low = std::get<LowMaxDeg>(split);
    C4FreeCandidate cand = reduce_max_degree(low.h, k, cfg);
    C4FreeResult res = sparsify_bounded_degree(cand.h.g, cfg);
    res.orig = compose_map(compose_map(low.orig, cand.orig), res.orig);
    res.guarantee_met = res.achieved >= t;
    return res;
}

using ExtractionOutcome = std::variant<C4FreeResult, NeighborhoodWitness>;

// One iteration of the single-exponential recursion. Either a
// C4-free subgraph, or a witness with density >= d/50t driving the next
// narrowing.
inline ExtractionOutcome iterate_step(const BipartiteGraph& bg, const Rational& d,
                                      const Rational& t, const SamplerConfig& cfg)
{
    if (is_c4_free(bg.g) && bg.g.average_degree() >= t) {
        C4FreeResult res;
        res.subgraph = bg.g;
        res.orig = identity_map(bg.g.n);
        res.achieved = bg.g.average_degree();
        res.guarantee_met = true;
        res.seed_used = cfg.seed;
        return res;
    }
    if (bg.g.average_degree() < d)
        throw contract_error("iterate_step: d(G) = " + bg.g.average_degree().str() + " < d = "
                             + d.str());
    LowdegOutcome low = extract_lowdeg_c4free(bg, d, t, cfg);
    if (auto* res = std::get_if<C4FreeResult>(&low)) {
        res->guarantee_met = res->achieved >= t;
        return std::move(*res);
    }
    auto& up = std::get<UnbalancedPart>(low);
    Rational lam = d / (Rational(50) * t);
    if (lam < Rational(1))
        lam = Rational(1);
    CodegreeOutcome co = codegree_reduce(up.h, ScaledPower::rational(lam));
    if (auto* w = std::get_if<NeighborhoodWitness>(&co)) {
        NeighborhoodWitness out;
        out.v = up.orig[static_cast<std::size_t>(w->v)];
        out.a_prime = apply_map(up.orig, w->a_prime);
        out.b_prime = apply_map(up.orig, w->b_prime);
        // density restated in the input graph, where the induced pair can
        // only gain edges
        out.density = induced_bipartite(bg.g, out.a_prime, out.b_prime).bg.g.average_degree();
        return out;
    }
    auto& sp = std::get<SpanningLowCodegree>(co);
    C4FreeResult res = sparsify_skew(sp.h, d, cfg);
    res.orig = compose_map(up.orig, res.orig);
    res.guarantee_met = res.achieved >= t;
    return res;
}

// One iteration of the double-exponential recursion (peel,
// select, codegree-reduce at lambda = d^{1/5}, then sparsify).
inline ExtractionOutcome double_exp_step(const BipartiteGraph& bg, const Rational& d,
                                         const Rational& t, const SamplerConfig& cfg)
{
    if (is_c4_free(bg.g) && bg.g.average_degree() >= t) {
        C4FreeResult res;
        res.subgraph = bg.g;
        res.orig = identity_map(bg.g.n);
        res.achieved = bg.g.average_degree();
        res.guarantee_met = true;
        res.seed_used = cfg.seed;
        return res;
    }
    auto peeled = min_degree_peel(bg, d / Rational(2));
    if (peeled.bg.g.n == 0)
        throw std::logic_error("double_exp_step: peel emptied the graph");
    BipartiteGraph base = peeled.bg.class_a.size() >= peeled.bg.class_b.size()
                              ? peeled.bg
                              : peeled.bg.flipped();
    BipartiteGraph g1 = degree_select(base, d);
    ScaledPower lam = ScaledPower::power(Rational(1), d, 1, 5);
    if (!lam.geq(Rational(1)))
        lam = ScaledPower::rational(Rational(1));
    CodegreeOutcome co = codegree_reduce(g1, lam);
    if (auto* w = std::get_if<NeighborhoodWitness>(&co)) {
        NeighborhoodWitness out;
        out.v = peeled.orig[static_cast<std::size_t>(w->v)];
        out.a_prime = apply_map(peeled.orig, w->a_prime);
        out.b_prime = apply_map(peeled.orig, w->b_prime);
        out.density = induced_bipartite(bg.g, out.a_prime, out.b_prime).bg.g.average_degree();
        return out;
    }
    auto& sp = std::get<SpanningLowCodegree>(co);
    C4FreeResult res = sparsify_smallcodeg(sp.h, d, cfg);
    res.orig = compose_map(peeled.orig, res.orig);
    res.guarantee_met = res.achieved >= t;
    return res;
}

enum class PipelineMode { SingleExp, DoubleExp };

struct IterationRecord {
    int index = 0;
    int witness_vertex = -1;  // original id
    int a_size = 0;
    int b_size = 0;
    Rational density;  // exact average degree of the recorded induced subgraph
};

struct PipelineTrace {
    long long t = 0;
    std::string mode;
    std::vector<IterationRecord> records;
    std::vector<int> final_class_a;  // original ids
    std::vector<int> final_class_b;
    std::string outcome_kind;
    Rational achieved;
    bool guarantee_met = false;
    bool harvested = false;
    std::vector<int> harvest_left;
    std::vector<int> harvest_right;
};

struct KssHarvest {
    std::vector<int> left;   // original ids, |left| = s
    std::vector<int> right;  // original ids, |right| = s
};

namespace extraction_detail {

    // Relabeling pigeonhole: candidates are the recorded witness vertices
    // plus the current opposite class; a candidate qualifies if it is
    // adjacent, in the original graph, to every vertex of the chosen side's
    // first s ids.
    inline std::optional<KssHarvest> harvest_core(const Graph& original,
                                                  const std::vector<int>& witnesses,
                                                  const std::vector<int>& side,
                                                  const std::vector<int>& opposite, int s)
    {
        if (static_cast<int>(side.size()) < s)
            return std::nullopt;
        std::vector<int> right(side.begin(), side.begin() + s);
        std::vector<int> candidates = witnesses;
        candidates.insert(candidates.end(), opposite.begin(), opposite.end());
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        std::vector<int> left;
        for (int v : candidates) {
            bool all = true;
            for (int u : right)
                if (u == v || !original.has_edge(v, u)) {
                    all = false;
                    break;
                }
            if (all) {
                left.push_back(v);
                if (static_cast<int>(left.size()) == s)
                    break;
            }
        }
        if (static_cast<int>(left.size()) < s)
            return std::nullopt;
        for (int v : left)
            for (int u : right)
                if (!original.has_edge(v, u))
                    throw std::logic_error("harvest: K_{s,s} edge missing from original graph");
        return KssHarvest{std::move(left), std::move(right)};
    }

}  // namespace extraction_detail

// Find an explicit K_{s,s} from a pipeline trace, every edge verified in
// the original graph.
inline std::optional<KssHarvest> harvest_kss(const Graph& original, const PipelineTrace& trace,
                                             int s)
{
    if (s < 1)
        throw std::invalid_argument("harvest_kss: s must be >= 1");
    std::vector<int> witnesses;
    for (const auto& r : trace.records)
        witnesses.push_back(r.witness_vertex);
    auto h = extraction_detail::harvest_core(original, witnesses, trace.final_class_a,
                                             trace.final_class_b, s);
    if (h)
        return h;
    return extraction_detail::harvest_core(original, witnesses, trace.final_class_b,
                                           trace.final_class_a, s);
}

// Place the Reiman embedding inside a harvested K_{s,s}: a C4-free subgraph
// of the original graph with average degree q+1 >= t on its vertex set.
inline C4FreeResult embed_reiman_in_harvest(const Graph& original, const KssHarvest& kss,
                                            long long t, const SamplerConfig& cfg)
{
    ReimanEmbedding r = reiman_embed(t);
    int nc = r.core_per_class;
    long long s = static_cast<long long>(kss.left.size());
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : r.graph.g.edges()) {
        int p = std::min(u, v);                        // core point id, < nc
        int l = std::max(u, v) - static_cast<int>(s);  // core line id, < nc
        edges.emplace_back(p, nc + l);
    }
    C4FreeResult res;
    res.orig.reserve(static_cast<std::size_t>(2 * nc));
    for (int i = 0; i < nc; ++i)
        res.orig.push_back(kss.left[static_cast<std::size_t>(i)]);
    for (int i = 0; i < nc; ++i)
        res.orig.push_back(kss.right[static_cast<std::size_t>(i)]);
    res.subgraph = Graph::from_edges(2 * nc, edges);
    for (auto [u, v] : res.subgraph.edges())
        if (!original.has_edge(res.orig[static_cast<std::size_t>(u)],
                               res.orig[static_cast<std::size_t>(v)]))
            throw std::logic_error("embed_reiman_in_harvest: edge missing from original graph");
    res.achieved = res.subgraph.average_degree();
    res.guarantee_met = res.achieved >= Rational(t);
    res.seed_used = cfg.seed;
    return res;
}

struct PipelineResult {
    ExtractionOutcome outcome;
    PipelineTrace trace;
};

// SingleExp / DoubleExp pipeline: bipartize,
// iterate the chosen recursion at most 8t^2 times, harvesting a K_{s,s}
// (s = 4t^2) for the Reiman embedding whenever the witness stack and
// current density allow it.
inline PipelineResult run_pipeline(const Graph& g, long long t, PipelineMode mode,
                                   const SamplerConfig& cfg)
{
    if (t < 2)
        throw std::invalid_argument("run_pipeline: t must be >= 2");
    PipelineTrace trace;
    trace.t = t;
    trace.mode = mode == PipelineMode::SingleExp ? "single" : "double";
    Rational target(t);
    auto finish = [&](C4FreeResult res) -> PipelineResult {
        trace.outcome_kind = "c4free";
        trace.achieved = res.achieved;
        trace.guarantee_met = res.guarantee_met;
        return {std::move(res), std::move(trace)};
    };

    if (is_c4_free(g) && g.average_degree() >= target) {
        C4FreeResult res;
        res.subgraph = g;
        res.orig = identity_map(g.n);
        res.achieved = g.average_degree();
        res.guarantee_met = true;
        res.seed_used = cfg.seed;
        return finish(std::move(res));
    }

    BipartiteGraph bg0 = bipartize(g);
    BipartiteGraph current = bg0;
    std::vector<int> cur_orig = identity_map(g.n);
    std::vector<int> witnesses;
    long long s = 4 * t * t;
    long long max_iters = 8 * t * t;
    std::optional<C4FreeResult> best;

    auto update_best = [&](C4FreeResult res) {
        if (!best || res.achieved > best->achieved)
            best = std::move(res);
    };
    auto sync_trace_classes = [&] {
        trace.final_class_a = apply_map(cur_orig, current.class_a);
        trace.final_class_b = apply_map(cur_orig, current.class_b);
    };
    auto try_harvest = [&]() -> std::optional<C4FreeResult> {
        if (current.g.average_degree() < Rational(s))
            return std::nullopt;
        sync_trace_classes();
        auto kss = harvest_kss(g, trace, static_cast<int>(s));
        if (!kss)
            return std::nullopt;
        C4FreeResult res = embed_reiman_in_harvest(g, *kss, t, cfg);
        trace.harvested = true;
        trace.harvest_left = kss->left;
        trace.harvest_right = kss->right;
        return res;
    };

    for (long long i = 1; i <= max_iters; ++i) {
        if (current.g.m == 0)
            break;
        if (is_c4_free(current.g) && current.g.average_degree() >= target) {
            C4FreeResult res;
            res.subgraph = current.g;
            res.orig = cur_orig;
            res.achieved = current.g.average_degree();
            res.guarantee_met = true;
            res.seed_used = cfg.seed;
            sync_trace_classes();
            return finish(std::move(res));
        }
        if (auto harvested = try_harvest())
            return finish(std::move(*harvested));

        Rational d = current.g.average_degree();
        ExtractionOutcome out = mode == PipelineMode::SingleExp
                                    ? iterate_step(current, d, target, cfg)
                                    : double_exp_step(current, d, target, cfg);
        if (auto* res = std::get_if<C4FreeResult>(&out)) {
            res->orig = compose_map(cur_orig, res->orig);
            bool met = res->guarantee_met;
            update_best(std::move(*res));
            if (met) {
                sync_trace_classes();
                return finish(std::move(*best));
            }
            break;  // no witness to continue with
        }
        auto& w = std::get<NeighborhoodWitness>(out);
        int v_orig = cur_orig[static_cast<std::size_t>(w.v)];
        auto ind = induced_bipartite(current.g, w.a_prime, w.b_prime);
        cur_orig = compose_map(cur_orig, ind.orig);
        current = std::move(ind.bg);
        IterationRecord rec;
        rec.index = static_cast<int>(i);
        rec.witness_vertex = v_orig;
        rec.a_size = static_cast<int>(current.class_a.size());
        rec.b_size = static_cast<int>(current.class_b.size());
        rec.density = current.g.average_degree();
        trace.records.push_back(rec);
        witnesses.push_back(v_orig);
    }

    sync_trace_classes();
    if (auto harvested = try_harvest())
        return finish(std::move(*harvested));

    // fallback: deterministic alteration of the bipartized input
    C4FreeResult alt;
    alt.subgraph = c4_alteration(bg0.g);
    alt.orig = identity_map(g.n);
    alt.achieved = alt.subgraph.average_degree();
    alt.guarantee_met = alt.achieved >= target;
    alt.seed_used = cfg.seed;
    update_best(std::move(alt));
    return finish(std::move(*best));
}

}  // namespace gf
