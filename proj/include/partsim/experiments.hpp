// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "partsim/baselines.hpp"
#include "partsim/datasets.hpp"
#include "partsim/didic.hpp"
#include "partsim/emulator.hpp"
#include "partsim/io.hpp"
#include "partsim/workloads.hpp"

namespace partsim {

// Flat "section.key = value" config files.
class Config {
  public:
    Config() = default;
    static Config parse(std::istream& in);
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.contains(key); }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& key,
                                      const std::vector<std::string>& fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

enum class ExperimentKind : std::uint8_t { Static, Insert, Stress, Dynamic };

ExperimentKind experiment_kind_from_string(const std::string& s);
const char* to_string(ExperimentKind k);

enum class DatasetKind : std::uint8_t { Fs, Gis, Social };

DatasetKind dataset_kind_from_string(const std::string& s);
const char* to_string(DatasetKind k);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Static;
    DatasetKind dataset = DatasetKind::Fs;
    std::uint32_t target_vertices = 10000;
    std::uint64_t dataset_seed = 1;
    std::uint32_t k = 2;
    std::uint64_t partition_seed = 1;
    std::vector<PartitionMethod> methods;  // static experiment comparison set
    DidicConfig didic;
    OpKind pattern = OpKind::FsBfs;
    std::uint32_t num_ops = 2000;
    std::uint64_t workload_seed = 1;
    std::vector<double> levels{0.01, 0.02, 0.05, 0.10, 0.25};
    std::vector<InsertPolicy> policies{InsertPolicy::Random, InsertPolicy::FewestVertices,
                                       InsertPolicy::LeastTraffic};
    std::uint64_t dynamism_seed = 1;
    bool reinit_loads = false;  // stress/dynamic: re-init load vectors instead of resuming
    std::string out_dir = "out";

    static ExperimentSpec from_config(const Config& cfg);
};

struct ExperimentResult {
    std::vector<MetricsRow> rows;
};

// Shared state across the four drivers: dataset, evaluation log, and the
// DiDiC baseline (partition map plus converged load state).
class ExperimentContext {
  public:
    explicit ExperimentContext(const ExperimentSpec& spec);

    const Graph& graph() const { return graph_; }
    const OperationLog& eval_log() const { return eval_log_; }
    const PartitionMap& didic_baseline() const;
    const LoadState& didic_load_state() const;
    const ExperimentSpec& spec() const { return spec_; }

    PartitionMap make_partitioning(PartitionMethod method) const;
    MetricsRow measure(const PartitionMap& map, const std::string& method_label,
                       double level = 0.0, std::uint64_t sample = 0,
                       std::vector<OpTrafficSample>* op_series = nullptr) const;

    void ensure_didic_baseline();

  private:
    ExperimentSpec spec_;
    Graph graph_;
    OperationLog eval_log_;
    std::optional<PartitionMap> didic_map_;
    std::optional<LoadState> didic_state_;
};

ExperimentResult run_static(ExperimentContext& ctx);
ExperimentResult run_insert(ExperimentContext& ctx,
                            std::map<std::string, DynamismLog>* logs_out = nullptr);
ExperimentResult run_stress(ExperimentContext& ctx,
                            const std::map<std::string, DynamismLog>* insert_logs = nullptr);
ExperimentResult run_dynamic(ExperimentContext& ctx);

// Full driver: runs the configured experiment and writes CSVs, logs, and a
// provenance file into spec.out_dir.
void run_experiment_to_files(const ExperimentSpec& spec, const Config& provenance);

}  // namespace partsim
