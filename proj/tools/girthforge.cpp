#include "girthforge/constructions.hpp"
#include "girthforge/extraction.hpp"
#include "girthforge/io.hpp"
#include "girthforge/oracle.hpp"
#include "girthforge/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitContract = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw gf::parse_error(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_or_print(const std::string& out_path, const std::string& body)
{
    if (out_path.empty())
        std::cout << body;
    else
        gf::write_file(out_path, body);
}

gf::Graph load_graph(const std::string& path)
{
    auto pg = gf::parse_edgelist(path);
    if (auto* g = std::get_if<gf::Graph>(&pg))
        return std::move(*g);
    return std::move(std::get<gf::BipartiteGraph>(pg).g);
}

gf::BipartiteGraph load_bipartite(const std::string& path)
{
    auto pg = gf::parse_edgelist(path);
    if (auto* bg = std::get_if<gf::BipartiteGraph>(&pg))
        return std::move(*bg);
    throw gf::parse_error(path + ": expected a bipartite edge list (missing 'A:' line)");
}

// "blockId: v1 v2 ..." per line; returns blocks indexed by blockId order
std::vector<std::vector<int>> parse_blocks(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw gf::parse_error(path + ": cannot open");
    std::map<int, std::vector<int>> by_id;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw gf::parse_error(path + ":" + std::to_string(lineno) + ": expected 'blockId: v1 v2 ...'");
        std::istringstream head(line.substr(0, colon)), tail(line.substr(colon + 1));
        int id;
        if (!(head >> id))
            throw gf::parse_error(path + ":" + std::to_string(lineno) + ": bad block id");
        std::vector<int> verts;
        int v;
        while (tail >> v)
            verts.push_back(v);
        if (!tail.eof())
            throw gf::parse_error(path + ":" + std::to_string(lineno) + ": bad vertex list");
        if (!by_id.emplace(id, std::move(verts)).second)
            throw gf::parse_error(path + ":" + std::to_string(lineno) + ": duplicate block id");
    }
    std::vector<std::vector<int>> blocks;
    for (auto& [id, verts] : by_id)
        blocks.push_back(std::move(verts));
    return blocks;
}

gf::OracleBudget budget_from_env()
{
    gf::OracleBudget b;
    if (const char* s = std::getenv("GIRTHFORGE_BUDGET_SECONDS"))
        b.time_limit_seconds = std::stod(s);
    return b;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"girthforge: certified C4-free subgraph extraction and constructions"};
    app.require_subcommand(1);

    std::string in_path, out_path, report_path, blocks_path, mode_str = "single", host_path;
    std::uint64_t seed = 0;
    int retries = 100;
    long long t = 2, k = 2, d = 2, q = 2;

    auto* gen = app.add_subcommand("gen", "generate graphs");
    gen->require_subcommand(1);
    auto* gen_plane = gen->add_subcommand("plane", "projective-plane incidence graph");
    gen_plane->add_option("--q", q, "plane order (prime)")->required();
    gen_plane->add_option("--out", out_path, "output edge list (default stdout)");
    auto* gen_reiman = gen->add_subcommand("reiman", "C4-free embedding into K_{4k^2,4k^2}");
    gen_reiman->add_option("--k", k, "density parameter")->required();
    gen_reiman->add_option("--out", out_path, "output edge list (default stdout)");
    auto* gen_blowup = gen->add_subcommand("blowup", "blow up a bipartite host");
    gen_blowup->add_option("--host", host_path, "host edge list (bipartite)")->required();
    gen_blowup->add_option("--d", d, "block parameter")->required();
    gen_blowup->add_option("--out", out_path, "output edge list (default stdout)");

    auto* extract = app.add_subcommand("extract", "run an extraction pipeline");
    extract->add_option("--mode", mode_str, "single|double")
        ->check(CLI::IsMember({"single", "double"}));
    extract->add_option("--t", t, "target average degree")->required();
    extract->add_option("--seed", seed, "RNG seed (mandatory, never defaulted)")->required();
    extract->add_option("--retries", retries, "Las Vegas retry cap");
    extract->add_option("--in", in_path, "input edge list")->required();
    extract->add_option("--report", report_path, "report JSON path")->required();
    extract->add_option("--out", out_path, "also write the output edge list here");

    auto* verify = app.add_subcommand("verify", "check the certified bounds");
    verify->require_subcommand(1);
    auto* v8 = verify->add_subcommand("lemma8", "13kd ceiling for block-partitioned graphs");
    v8->add_option("--in", in_path, "C4-free subgraph edge list")->required();
    v8->add_option("--host", host_path, "bipartite host carrying the full block graph")->required();
    v8->add_option("--blocks", blocks_path, "block file 'blockId: v1 v2 ...'")->required();
    v8->add_option("--d", d, "block parameter")->required();
    auto* v9 = verify->add_subcommand("lemma9", "18d ceiling under the block-degree hypothesis");
    v9->add_option("--in", in_path, "bipartite edge list")->required();
    v9->add_option("--blocks", blocks_path, "class-A block file")->required();
    v9->add_option("--d", d, "block-degree threshold (>= 3)")->required();
    auto* vers = verify->add_subcommand("ers", "e <= n^{3/2}/2 + n/4 edge-count bound");
    vers->add_option("--in", in_path, "edge list")->required();

    auto* oracle = app.add_subcommand("oracle", "exact brute-force references");
    oracle->require_subcommand(1);
    for (const char* name : {"maxc4free", "bestavg", "girth", "threeregular"})
        oracle->add_subcommand(name)->add_option("--in", in_path, "edge list")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen_plane->parsed()) {
            auto inc = gf::incidence_graph(gf::build_plane(q));
            write_or_print(out_path, gf::emit_edgelist_text(inc));
            return kExitOk;
        }
        if (gen_reiman->parsed()) {
            auto r = gf::reiman_embed(k);
            write_or_print(out_path, gf::emit_edgelist_text(r.graph));
            return kExitOk;
        }
        if (gen_blowup->parsed()) {
            auto pb = gf::blow_up(load_bipartite(host_path), static_cast<int>(d));
            std::ostringstream body;
            body << gf::emit_edgelist_text(pb.bg);
            for (std::size_t i = 0; i < pb.blocks_a.size() + pb.blocks_b.size(); ++i) {
                const auto& blk = i < pb.blocks_a.size()
                                      ? pb.blocks_a[i]
                                      : pb.blocks_b[i - pb.blocks_a.size()];
                body << "# block " << i << ":";
                for (int v : blk)
                    body << " " << v;
                body << "\n";
            }
            write_or_print(out_path, body.str());
            return kExitOk;
        }
        if (extract->parsed()) {
            gf::ReportTimer timer;
            std::string input_text = read_file(in_path);
            std::istringstream in(input_text);
            auto pg = gf::parse_edgelist_text(in, in_path);
            const gf::Graph& g = std::holds_alternative<gf::Graph>(pg)
                                     ? std::get<gf::Graph>(pg)
                                     : std::get<gf::BipartiteGraph>(pg).g;
            gf::SamplerConfig cfg{seed, retries};
            auto mode = mode_str == "single" ? gf::PipelineMode::SingleExp
                                             : gf::PipelineMode::DoubleExp;
            auto pr = gf::run_pipeline(g, t, mode, cfg);
            std::ostringstream cmd;
            cmd << "extract --mode " << mode_str << " --t " << t << " --seed " << seed
                << " --retries " << retries << " --in " << in_path;
            auto rep = gf::extraction_report(cmd.str(), input_text, cfg, pr, timer.elapsed_ms());
            gf::write_file(report_path, rep.dump(2) + "\n");
            const auto* res = std::get_if<gf::C4FreeResult>(&pr.outcome);
            if (res && !out_path.empty())
                gf::write_file(out_path, gf::emit_edgelist_text(res->subgraph));
            std::cout << "outcome: " << pr.trace.outcome_kind
                      << " achieved: " << pr.trace.achieved.str()
                      << " guarantee_met: " << (pr.trace.guarantee_met ? "true" : "false") << "\n";
            return kExitOk;
        }
        if (v8->parsed()) {
            auto host = load_bipartite(host_path);
            auto blocks = parse_blocks(blocks_path);
            std::vector<std::vector<int>> blocks_a, blocks_b;
            for (auto& blk : blocks) {
                if (blk.empty())
                    throw gf::parse_error(blocks_path + ": empty block");
                (host.in_a(blk.front()) ? blocks_a : blocks_b).push_back(std::move(blk));
            }
            auto pb = gf::PartitionedBipartite::make(std::move(host), std::move(blocks_a),
                                                     std::move(blocks_b));
            auto sub = load_graph(in_path);
            auto rep = gf::verify_lemma8(pb, sub, static_cast<int>(d));
            for (const auto& l : rep.lines)
                std::cout << l << "\n";
            return rep.ok ? kExitOk : kExitContract;
        }
        if (v9->parsed()) {
            auto bg = load_bipartite(in_path);
            auto blocks = parse_blocks(blocks_path);
            auto rep = gf::verify_lemma9(bg, blocks, static_cast<int>(d));
            for (const auto& l : rep.lines)
                std::cout << l << "\n";
            return rep.ok ? kExitOk : kExitContract;
        }
        if (vers->parsed()) {
            auto g = load_graph(in_path);
            auto b = gf::ers_bound(g.n);
            std::cout << "n: " << g.n << " e: " << g.m << " bound: " << b.max_edges << "\n";
            return g.m <= b.max_edges ? kExitOk : kExitContract;
        }
        if (oracle->parsed()) {
            auto g = load_graph(in_path);
            auto b = budget_from_env();
            const std::string sub = oracle->get_subcommands().front()->get_name();
            if (sub == "maxc4free") {
                auto r = gf::max_c4free_edges(g, b);
                std::cout << "max_c4free_edges: " << r.count << "\n";
                for (auto [u, v] : r.witness)
                    std::cout << u << " " << v << "\n";
            } else if (sub == "bestavg") {
                auto r = gf::best_c4free_avg_degree(g, b);
                std::cout << "best_c4free_avg_degree: " << r.value.str() << "\n";
            } else if (sub == "girth") {
                auto gi = gf::girth(g);
                std::cout << "girth: " << (gi ? std::to_string(*gi) : std::string("Acyclic"))
                          << "\n";
            } else {
                auto r = gf::has_3_regular_subgraph(g, b);
                std::cout << "three_regular: " << (r.found ? "found" : "none") << "\n";
                for (auto [u, v] : r.edges)
                    std::cout << u << " " << v << "\n";
            }
            return kExitOk;
        }
    } catch (const gf::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    }
    return kExitUsage;
}
