// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: dataset generation, partitioning, metrics,
// workload generation/replay, and the four experiment drivers.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "partsim/experiments.hpp"
#include "partsim/metrics.hpp"

namespace {

using namespace partsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSpec = 2;
constexpr int kExitRuntime = 3;

PartitionMap load_partition_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open partition map " + path);
    return read_partition_map(in);
}

int cmd_generate(const std::string& dataset, std::uint64_t seed, std::uint32_t target,
                 const std::string& out) {
    DatasetKind kind = dataset_kind_from_string(dataset);
    Graph g;
    switch (kind) {
        case DatasetKind::Fs: {
            FsGenSpec s;
            s.seed = seed;
            s.target_vertices = target;
            g = generate_fs(s);
            break;
        }
        case DatasetKind::Gis: {
            GisGenSpec s;
            s.seed = seed;
            s.target_vertices = target;
            g = generate_gis(s);
            break;
        }
        case DatasetKind::Social: {
            SocialGenSpec s;
            s.seed = seed;
            s.target_vertices = target;
            g = generate_social(s);
            break;
        }
    }
    write_graph_file(g, out);
    std::cout << "wrote " << out << " (" << g.num_vertices() << " vertices, " << g.num_edges()
              << " edges)\n";
    return kExitOk;
}

int cmd_partition(const std::string& graph_path, const std::string& method_name, std::uint32_t k,
                  std::uint64_t seed, std::uint32_t didic_iterations, const std::string& out) {
    Graph g = read_graph_file(graph_path);
    PartitionMethod method = partition_method_from_string(method_name);
    PartitionMap map(g.num_vertices(), k);
    switch (method) {
        case PartitionMethod::Random: map = partition_random(g, k, seed); break;
        case PartitionMethod::HardcodedFs: map = partition_fs_subtrees(g, k); break;
        case PartitionMethod::HardcodedGisLon: map = partition_gis_longitude(g, k); break;
        case PartitionMethod::Didic: {
            DidicConfig cfg;
            cfg.k = k;
            cfg.seed = seed;
            cfg.iterations = didic_iterations;
            map = run_didic(g, partition_random(g, k, seed), cfg);
            break;
        }
    }
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file " + out);
    write_partition_map(map, os);
    std::cout << "wrote " << out << '\n';
    return kExitOk;
}

int cmd_metrics(const std::string& graph_path, const std::string& map_path,
                const std::string& out) {
    Graph g = read_graph_file(graph_path);
    PartitionMap map = load_partition_map(map_path);
    if (map.size() != g.num_vertices())
        throw std::invalid_argument("partition map size does not match the graph");
    UndirectedView uv(g);
    QualityReport q = quality_report(uv, map, map.k());

    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file " + out);
    os << "k,edge_cut_weight,edge_cut_fraction,conductance,modularity,partition_count_dev,"
          "partition_size_stdev\n";
    os << map.k() << ',' << format_double(q.edge_cut_weight) << ','
       << format_double(q.edge_cut_fraction) << ',' << format_double(q.conductance) << ','
       << format_double(q.modularity) << ',' << q.partition_count_dev << ','
       << format_double(q.partition_size_stdev) << '\n';
    std::cout << "wrote " << out << '\n';
    return kExitOk;
}

int cmd_workload_gen(const std::string& graph_path, const std::string& pattern,
                     std::uint32_t num_ops, std::uint64_t seed, const std::string& out) {
    Graph g = read_graph_file(graph_path);
    WorkloadSpec w;
    w.pattern = op_kind_from_string(pattern);
    w.num_ops = num_ops;
    w.seed = seed;
    OperationLog log = generate_operations(g, w);
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file " + out);
    write_operation_log(log, os);
    std::cout << "wrote " << out << " (" << log.records.size() << " operations)\n";
    return kExitOk;
}

int cmd_workload_replay(const std::string& graph_path, const std::string& map_path,
                        const std::string& log_path, const std::string& out) {
    Graph g = read_graph_file(graph_path);
    PartitionMap map = load_partition_map(map_path);
    std::ifstream li(log_path);
    if (!li) throw std::runtime_error("cannot open operation log " + log_path);
    OperationLog log = read_operation_log(li);

    Emulator em(g, map);
    std::vector<OpTrafficSample> samples = replay_log(em, log);
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file " + out);
    write_op_traffic_csv(samples, os);

    std::uint64_t total = em.total_local_traffic() + em.total_global_traffic();
    std::cout << "replayed " << log.records.size() << " operations: total=" << total
              << " local=" << em.total_local_traffic() << " global=" << em.total_global_traffic()
              << " pct_global="
              << format_double(total ? percentage_global(total, em.total_global_traffic()) : 0.0)
              << '\n';
    return kExitOk;
}

int cmd_experiment(const std::string& kind, const std::string& config_path,
                   const std::string& out_override) {
    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    cfg.set("experiment.kind", kind);
    ExperimentSpec spec = ExperimentSpec::from_config(cfg);
    if (!out_override.empty()) spec.out_dir = out_override;
    run_experiment_to_files(spec, cfg);
    std::cout << "experiment '" << kind << "' written to " << spec.out_dir << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph partitioning toolkit and traffic simulation harness"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::string out;
    std::string config_path;

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset");
    std::string gen_dataset = "fs";
    std::uint32_t gen_target = 10000;
    gen->add_option("--dataset", gen_dataset, "fs | gis | social")->required();
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--target-vertices", gen_target, "approximate vertex count");
    gen->add_option("--out", out, "output path (.gml or .graph)")->required();

    // partition
    auto* part = app.add_subcommand("partition", "Partition a graph");
    std::string part_graph, part_method = "random";
    std::uint32_t part_k = 2, part_iterations = 100;
    part->add_option("--graph", part_graph, "input graph")->required();
    part->add_option("--method", part_method, "random | hardcoded_fs | hardcoded_gis | didic");
    part->add_option("--k", part_k, "partition count");
    part->add_option("--seed", seed, "partitioning seed");
    part->add_option("--iterations", part_iterations, "diffusion iterations (didic)");
    part->add_option("--out", out, "output partition map")->required();

    // metrics
    auto* met = app.add_subcommand("metrics", "Quality metrics for a partitioned graph");
    std::string met_graph, met_map;
    met->add_option("--graph", met_graph, "input graph")->required();
    met->add_option("--map", met_map, "partition map")->required();
    met->add_option("--out", out, "output CSV")->required();

    // workload gen / replay
    auto* wl = app.add_subcommand("workload", "Generate or replay operation logs");
    wl->require_subcommand(1);
    auto* wl_gen = wl->add_subcommand("gen", "Generate an operation log");
    std::string wl_graph, wl_pattern = "FS_BFS";
    std::uint32_t wl_ops = 2000;
    wl_gen->add_option("--graph", wl_graph, "input graph")->required();
    wl_gen->add_option("--pattern", wl_pattern,
                       "FS_BFS | GIS_ASTAR_SHORT | GIS_ASTAR_LONG | SOCIAL_FOAF");
    wl_gen->add_option("--num-ops", wl_ops, "operation count");
    wl_gen->add_option("--seed", seed, "workload seed");
    wl_gen->add_option("--out", out, "output log")->required();
    auto* wl_rep = wl->add_subcommand("replay", "Replay an operation log");
    std::string wl_map, wl_log;
    wl_rep->add_option("--graph", wl_graph, "input graph")->required();
    wl_rep->add_option("--map", wl_map, "partition map")->required();
    wl_rep->add_option("--log", wl_log, "operation log")->required();
    wl_rep->add_option("--out", out, "per-operation traffic CSV")->required();

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run an experiment from a config file");
    exp->require_subcommand(1);
    std::string exp_kind;
    for (const char* k : {"static", "insert", "stress", "dynamic"}) {
        auto* sub = exp->add_subcommand(k, std::string("run the ") + k + " experiment");
        sub->add_option("--config", config_path, "spec file (section.key = value lines)");
        sub->add_option("--out", out, "output directory override");
        sub->callback([&exp_kind, k] { exp_kind = k; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_dataset, seed, gen_target, out);
        if (part->parsed())
            return cmd_partition(part_graph, part_method, part_k, seed, part_iterations, out);
        if (met->parsed()) return cmd_metrics(met_graph, met_map, out);
        if (wl_gen->parsed()) return cmd_workload_gen(wl_graph, wl_pattern, wl_ops, seed, out);
        if (wl_rep->parsed()) return cmd_workload_replay(wl_graph, wl_map, wl_log, out);
        if (exp->parsed()) return cmd_experiment(exp_kind, config_path, out);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const partsim::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSpec;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSpec;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
