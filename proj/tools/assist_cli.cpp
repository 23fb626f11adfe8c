// Command-line front end: match runs, per-wave traces, benchmark sweeps.

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "assist/extraction.hpp"
#include "assist/swarm.hpp"
#include "assist/testkit.hpp"
#include "json.hpp"

namespace {

using namespace assist;
using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1;

struct Options {
    std::string pattern_path;
    std::string data_path;
    std::string ontology_path;
    std::vector<std::string> mode_flags;
    Params params;
    std::uint32_t agents = 0;  // 0 = auto
    std::uint64_t seed = kDefaultSeed;
    bool seed_given = false;
    std::string out_path;
    std::string trace_path;
    std::string trace_level = "per-wave";
};

// Shortest round-trip formatting so identical runs emit identical bytes.
std::string fmt(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--pattern", opt.pattern_path, "pattern graph document")->required();
    cmd->add_option("--data", opt.data_path, "data graph document")->required();
    cmd->add_option("--ontology", opt.ontology_path, "label subsumption pairs");
    cmd->add_option("--mode", opt.mode_flags,
                    "comma list of imprecise,temporal,missing")
        ->delimiter(',');
    cmd->add_option("--rho", opt.params.evaporation_rate, "evaporation rate");
    cmd->add_option("--q", opt.params.deposit_constant, "deposit constant");
    cmd->add_option("--tau0", opt.params.initial_pheromone, "initial node pheromone");
    cmd->add_option("--delta", opt.params.propagation_decay, "propagation decay per hop");
    cmd->add_option("--radius", opt.params.propagation_radius, "label propagation radius");
    cmd->add_option("--epsilon", opt.params.termination_epsilon, "termination threshold");
    cmd->add_option("--agents", opt.agents, "agents per wave (0 = 10x peered nodes)");
    cmd->add_option("--max-waves", opt.params.max_waves, "wave limit");
    cmd->add_option("--gamma", opt.params.imprecise_quality, "imprecise match quality");
    cmd->add_option("--theta", opt.params.extraction_threshold, "extraction threshold");
    cmd->add_option("--seed", opt.seed, "rng seed")->trigger_on_parse();
    cmd->add_option("--out", opt.out_path, "output path (default stdout)");
    cmd->add_option("--trace", opt.trace_path, "also write a per-wave CSV here");
    cmd->add_option("--trace-level", opt.trace_level, "summary | per-wave | per-node")
        ->check(CLI::IsMember({"summary", "per-wave", "per-node"}));
    cmd->set_config("--config");
}

Mode parse_mode(const Options& opt) {
    Mode mode;
    for (const std::string& f : opt.mode_flags) {
        if (f == "imprecise") {
            mode.imprecise = true;
        } else if (f == "temporal") {
            mode.temporal = true;
        } else if (f == "missing") {
            mode.missing = true;
        } else if (!f.empty()) {
            throw std::invalid_argument("unknown mode flag '" + f + "'");
        }
    }
    return mode;
}

void resolve_seed(Options& opt, const CLI::App* cmd) {
    opt.seed_given = cmd->count("--seed") > 0;
    if (!opt.seed_given) {
        if (const char* env = std::getenv("ASSIST_SEED")) {
            opt.seed = std::strtoull(env, nullptr, 10);
            opt.seed_given = true;
        }
    }
}

struct LoadedRun {
    LabeledGraph pattern;
    LabeledGraph data;
    Mode mode;
    std::optional<Ontology> ontology;
};

LoadedRun load_inputs(Options& opt) {
    LoadedRun run{load_graph_file(opt.pattern_path, GraphRole::pattern),
                  load_graph_file(opt.data_path, GraphRole::data), parse_mode(opt), std::nullopt};
    if (!opt.ontology_path.empty()) run.ontology = load_ontology_file(opt.ontology_path);
    if (run.mode.imprecise && !run.ontology) {
        throw std::invalid_argument("--mode imprecise requires --ontology");
    }
    if (opt.agents > 0) opt.params.agents_per_wave = opt.agents;
    return run;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

std::string trace_csv(const ConvergenceReport& report,
                      const std::vector<std::string>& node_rows, const std::string& level) {
    std::ostringstream csv;
    csv << "wave,pattern_sum,data_sum,delta,completed,failed\n";
    if (level == "summary" && !report.history.empty()) {
        const WaveTotals& r = report.history.back();
        csv << r.wave << ',' << fmt(r.pattern_sum) << ',' << fmt(r.data_sum) << ','
            << fmt(r.delta) << ',' << r.completed << ',' << r.failed << '\n';
        return csv.str();
    }
    for (const WaveTotals& r : report.history) {
        csv << r.wave << ',' << fmt(r.pattern_sum) << ',' << fmt(r.data_sum) << ',' << fmt(r.delta)
            << ',' << r.completed << ',' << r.failed << '\n';
    }
    for (const std::string& row : node_rows) csv << row;
    return csv.str();
}

json result_document(const Options& opt, const LoadedRun& run, const SwarmEngine& engine,
                     const ConvergenceReport& report, const MatchResult& result) {
    const LabeledGraph& pattern = run.pattern;
    const LabeledGraph& data = run.data;
    json doc;
    doc["inputs"] = {{"pattern", opt.pattern_path}, {"data", opt.data_path}};
    if (!opt.ontology_path.empty()) doc["inputs"]["ontology"] = opt.ontology_path;
    doc["mode"] = {{"imprecise", run.mode.imprecise},
                   {"temporal", run.mode.temporal},
                   {"missing", run.mode.missing}};
    doc["seed"] = opt.seed;
    doc["params"] = {{"rho", opt.params.evaporation_rate},
                     {"q", opt.params.deposit_constant},
                     {"tau0", opt.params.initial_pheromone},
                     {"delta", opt.params.propagation_decay},
                     {"radius", engine.params().propagation_radius},
                     {"epsilon", opt.params.termination_epsilon},
                     {"agents", engine.agents_per_wave()},
                     {"max_waves", opt.params.max_waves},
                     {"gamma", opt.params.imprecise_quality},
                     {"theta", opt.params.extraction_threshold}};
    doc["convergence"] = {
        {"waves", report.waves},
        {"terminated_by", report.terminated_by == StopReason::epsilon ? "epsilon" : "max_waves"},
        {"pattern_sum", report.final_totals.pattern_sum},
        {"data_sum", report.final_totals.data_sum}};

    auto pair_rows = [&](const std::vector<MatchPair>& pairs) {
        json rows = json::array();
        for (const MatchPair& p : pairs) {
            rows.push_back({{"pattern", pattern.name(p.pattern_node)},
                            {"data", data.name(p.data_node)},
                            {"score", p.score}});
        }
        return rows;
    };
    doc["pairs"] = pair_rows(result.pairs);
    doc["greedy_mapping"] = pair_rows(result.greedy);

    auto subgraph_doc = [](const LabeledGraph& g, const Subgraph& sub) {
        json nodes = json::array();
        for (NodeId n : sub.nodes) nodes.push_back(g.name(n));
        json edges = json::array();
        for (EdgeId e : sub.edges) {
            edges.push_back({g.name(g.edge(e).source), g.name(g.edge(e).target)});
        }
        return json{{"nodes", nodes}, {"edges", edges}};
    };
    doc["pattern_subgraph"] = subgraph_doc(pattern, result.pattern_subgraph);
    doc["data_subgraph"] = subgraph_doc(data, result.data_subgraph);

    json matched = json::array();
    for (const MatchedEdge& me : result.matched_edges) {
        const Edge& f = pattern.edge(me.pattern_edge);
        const Edge& e = data.edge(me.data_edge);
        matched.push_back({{"pattern", {pattern.name(f.source), pattern.name(f.target)}},
                           {"data", {data.name(e.source), data.name(e.target)}},
                           {"score", me.score}});
    }
    doc["matched_edges"] = matched;
    doc["summary"] = {{"size", result.size},
                      {"mean_score", result.mean_score},
                      {"coverage", result.coverage}};
    return doc;
}

int cmd_run(Options& opt, bool trace_only) {
    LoadedRun run = load_inputs(opt);
    SwarmEngine engine(run.pattern, run.data, opt.params, run.mode,
                       run.ontology ? &*run.ontology : nullptr);

    std::vector<std::string> node_rows;
    bool per_node = opt.trace_level == "per-node";
    auto observe = [&](const WaveTotals& row, const PheromoneState& state) {
        if (!per_node || row.wave % 10 != 1) return;
        for (int s = 0; s < 2; ++s) {
            const LabeledGraph& g = s == 0 ? run.pattern : run.data;
            for (NodeId n = 0; n < g.node_count(); ++n) {
                std::ostringstream r;
                r << "node," << row.wave << ',' << (s == 0 ? "pattern" : "data") << ','
                  << g.name(n) << ',' << fmt(state.node_field[s][n]) << ','
                  << fmt(state.quorum_field[s][n]) << '\n';
                node_rows.push_back(r.str());
            }
        }
    };
    ConvergenceReport report = engine.run_until_converged(opt.seed, observe);
    MatchResult result = extract_matches(engine.state(), run.pattern, run.data, engine.params(),
                                         run.mode);

    if (trace_only) {
        write_text(opt.out_path.empty() ? opt.trace_path : opt.out_path,
                   trace_csv(report, node_rows, opt.trace_level));
    } else {
        if (!opt.trace_path.empty()) {
            write_text(opt.trace_path, trace_csv(report, node_rows, opt.trace_level));
        }
        write_text(opt.out_path, result_document(opt, run, engine, report, result).dump(2) + "\n");
    }
    return result.pairs.empty() ? 3 : 0;
}

struct BenchOptions {
    std::vector<std::uint32_t> d_values;
    std::vector<std::uint32_t> p_values{20};
    std::uint32_t repetitions = 1;
};

int cmd_bench(Options& opt, const BenchOptions& bench) {
    std::ostringstream csv;
    csv << "p,d,rep,seed,index_build_ms,peer_comparisons,comparisons_per_pattern_node,waves,"
           "terminated_by,wall_ms,recall,greedy_size\n";

    LabeledGraph tri(GraphRole::pattern);
    NodeId a = tri.add_node("A", "A");
    NodeId b = tri.add_node("B", "B");
    NodeId c = tri.add_node("C", "C");
    tri.add_edge(a, b);
    tri.add_edge(b, c);
    tri.add_edge(c, a);
    std::vector<Label> alphabet;
    for (int i = 0; i < 30; ++i) alphabet.push_back("L" + std::to_string(i));

    for (std::uint32_t p : bench.p_values) {
        for (std::uint32_t d : bench.d_values) {
            if (p < 3 || d < 3) throw std::invalid_argument("sweep values must be >= 3");
            for (std::uint32_t rep = 0; rep < bench.repetitions; ++rep) {
                std::uint64_t seed = opt.seed + rep;
                PlantSpec pattern_spec{tri, p - 3, 0, alphabet, 0.0, 0.0, seed * 2 + 1};
                PlantSpec data_spec{tri, d - 3, 0, alphabet, 0.0, 0.0, seed * 2 + 2};
                LabeledGraph pattern = generate_pair(pattern_spec).pattern;
                LabeledGraph data = generate_pair(data_spec).data;

                using clock = std::chrono::steady_clock;
                auto t0 = clock::now();
                LabelIndex index = build_label_index(data);
                auto t1 = clock::now();
                PeerMap peers = peer_all(pattern, index);
                double per_node =
                    static_cast<double>(peers.comparisons) / static_cast<double>(p);

                Params params = opt.params;
                if (opt.agents > 0) params.agents_per_wave = opt.agents;
                SwarmEngine engine(pattern, data, params);
                auto t2 = clock::now();
                ConvergenceReport report = engine.run_until_converged(seed);
                auto t3 = clock::now();
                MatchResult result =
                    extract_matches(engine.state(), pattern, data, engine.params());

                // Planted recall: the three seed nodes keep their names.
                int hits = 0;
                for (const MatchPair& mp : result.greedy) {
                    const std::string& name = pattern.name(mp.pattern_node);
                    if ((name == "A" || name == "B" || name == "C") &&
                        data.name(mp.data_node) == name) {
                        ++hits;
                    }
                }
                auto ms = [](auto dt) {
                    return std::chrono::duration<double, std::milli>(dt).count();
                };
                csv << p << ',' << d << ',' << rep << ',' << seed << ',' << fmt(ms(t1 - t0))
                    << ',' << peers.comparisons << ',' << fmt(per_node) << ',' << report.waves
                    << ','
                    << (report.terminated_by == StopReason::epsilon ? "epsilon" : "max_waves")
                    << ',' << fmt(ms(t3 - t2)) << ',' << fmt(hits / 3.0) << ','
                    << result.greedy.size() << '\n';
            }
        }
    }
    write_text(opt.out_path, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ASSIST approximate subgraph matcher"};
    app.require_subcommand(1);

    Options run_opt, trace_opt, bench_opt;
    BenchOptions bench;

    CLI::App* run_cmd = app.add_subcommand("run", "match a pattern against a data graph");
    add_common_options(run_cmd, run_opt);

    CLI::App* trace_cmd = app.add_subcommand("trace", "run and emit the per-wave totals CSV");
    add_common_options(trace_cmd, trace_opt);

    CLI::App* bench_cmd = app.add_subcommand("bench", "planted-pair benchmark sweep");
    bench_cmd->add_option("--d", bench.d_values, "data sizes")->delimiter(',');
    bench_cmd->add_option("--p", bench.p_values, "pattern sizes")->delimiter(',');
    bench_cmd->add_option("--reps", bench.repetitions, "repetitions per cell");
    bench_cmd->add_option("--rho", bench_opt.params.evaporation_rate, "evaporation rate");
    bench_cmd->add_option("--epsilon", bench_opt.params.termination_epsilon,
                          "termination threshold");
    bench_cmd->add_option("--agents", bench_opt.agents, "agents per wave (0 = auto)");
    bench_cmd->add_option("--max-waves", bench_opt.params.max_waves, "wave limit");
    bench_cmd->add_option("--seed", bench_opt.seed, "base rng seed");
    bench_cmd->add_option("--out", bench_opt.out_path, "output CSV path (default stdout)");
    bench_cmd->set_config("--config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            resolve_seed(run_opt, run_cmd);
            return cmd_run(run_opt, false);
        }
        if (trace_cmd->parsed()) {
            resolve_seed(trace_opt, trace_cmd);
            return cmd_run(trace_opt, true);
        }
        resolve_seed(bench_opt, bench_cmd);
        return cmd_bench(bench_opt, bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
