// SPDX-License-Identifier: Apache-2.0
#include "partsim/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "partsim/metrics.hpp"

namespace partsim {

// --- Config ------------------------------------------------------------------

Config Config::parse(std::istream& in) {
    Config cfg;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", lineno);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ParseError("empty config key", lineno);
        cfg.values_[key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return parse(in);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::string Config::require_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::invalid_argument("missing config key: " + key);
    return it->second;
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
    if (ec != std::errc{} || p != it->second.data() + it->second.size())
        throw std::invalid_argument("config key " + key + " is not an integer: " + it->second);
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    double v = 0.0;
    auto [p, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
    if (ec != std::errc{} || p != it->second.data() + it->second.size())
        throw std::invalid_argument("config key " + key + " is not a number: " + it->second);
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw std::invalid_argument("config key " + key + " is not a boolean: " + it->second);
}

std::vector<std::string> Config::get_list(const std::string& key,
                                          const std::vector<std::string>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::string> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

// --- Spec --------------------------------------------------------------------

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "static") return ExperimentKind::Static;
    if (s == "insert") return ExperimentKind::Insert;
    if (s == "stress") return ExperimentKind::Stress;
    if (s == "dynamic") return ExperimentKind::Dynamic;
    throw std::invalid_argument("unknown experiment kind: " + s);
}

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Static: return "static";
        case ExperimentKind::Insert: return "insert";
        case ExperimentKind::Stress: return "stress";
        case ExperimentKind::Dynamic: return "dynamic";
    }
    return "static";
}

DatasetKind dataset_kind_from_string(const std::string& s) {
    if (s == "fs") return DatasetKind::Fs;
    if (s == "gis") return DatasetKind::Gis;
    if (s == "social") return DatasetKind::Social;
    throw std::invalid_argument("unknown dataset kind: " + s);
}

const char* to_string(DatasetKind k) {
    switch (k) {
        case DatasetKind::Fs: return "fs";
        case DatasetKind::Gis: return "gis";
        case DatasetKind::Social: return "social";
    }
    return "fs";
}

ExperimentSpec ExperimentSpec::from_config(const Config& cfg) {
    ExperimentSpec s;
    s.kind = experiment_kind_from_string(cfg.get_string("experiment.kind", "static"));
    s.dataset = dataset_kind_from_string(cfg.get_string("dataset.kind", "fs"));
    s.target_vertices = static_cast<std::uint32_t>(cfg.get_uint("dataset.target_vertices", 10000));
    s.dataset_seed = cfg.get_uint("dataset.seed", 1);
    s.k = static_cast<std::uint32_t>(cfg.get_uint("partition.k", 2));
    s.partition_seed = cfg.get_uint("partition.seed", 1);

    std::vector<std::string> default_methods{"random", "didic"};
    if (s.dataset == DatasetKind::Fs) default_methods.push_back("hardcoded_fs");
    if (s.dataset == DatasetKind::Gis) default_methods.push_back("hardcoded_gis");
    s.methods.clear();
    for (const std::string& m : cfg.get_list("partition.methods", default_methods))
        s.methods.push_back(partition_method_from_string(m));

    s.didic.k = s.k;
    s.didic.iterations = static_cast<std::uint32_t>(cfg.get_uint("didic.iterations", 100));
    s.didic.primary_steps = static_cast<std::uint32_t>(cfg.get_uint("didic.psi", 11));
    s.didic.secondary_steps = static_cast<std::uint32_t>(cfg.get_uint("didic.rho", 11));
    s.didic.benefit_high = cfg.get_double("didic.benefit_high", 10.0);
    s.didic.benefit_low = cfg.get_double("didic.benefit_low", 1.0);
    s.didic.seed = cfg.get_uint("didic.seed", s.partition_seed);
    std::string fs_mode = cfg.get_string("didic.flow_scale", "inv_max_degree");
    if (fs_mode == "inv_max_degree") {
        s.didic.flow_scale_mode = FlowScaleMode::InvMaxDegree;
    } else if (fs_mode == "constant") {
        s.didic.flow_scale_mode = FlowScaleMode::Constant;
        s.didic.flow_scale_constant = cfg.get_double("didic.flow_scale_constant", 0.5);
    } else {
        throw std::invalid_argument("unknown didic.flow_scale: " + fs_mode);
    }
    s.didic.execution = cfg.get_bool("didic.parallel", true) ? ExecutionMode::Parallel
                                                             : ExecutionMode::Serial;

    const char* default_pattern = s.dataset == DatasetKind::Fs      ? "FS_BFS"
                                  : s.dataset == DatasetKind::Gis   ? "GIS_ASTAR_SHORT"
                                                                    : "SOCIAL_FOAF";
    s.pattern = op_kind_from_string(cfg.get_string("workload.pattern", default_pattern));
    s.num_ops = static_cast<std::uint32_t>(cfg.get_uint("workload.num_ops", 2000));
    s.workload_seed = cfg.get_uint("workload.seed", 1);

    s.levels.clear();
    for (const std::string& l :
         cfg.get_list("dynamism.levels", {"0.01", "0.02", "0.05", "0.10", "0.25"})) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(l.data(), l.data() + l.size(), v);
        if (ec != std::errc{} || p != l.data() + l.size())
            throw std::invalid_argument("dynamism.levels entry is not a number: " + l);
        s.levels.push_back(v);
    }
    s.policies.clear();
    for (const std::string& p :
         cfg.get_list("dynamism.policies", {"random", "fewest_vertices", "least_traffic"}))
        s.policies.push_back(insert_policy_from_string(p));
    s.dynamism_seed = cfg.get_uint("dynamism.seed", 1);
    s.reinit_loads = cfg.get_bool("didic.reinit_loads", false);
    s.out_dir = cfg.get_string("output.dir", "out");
    return s;
}

// --- Context -----------------------------------------------------------------

namespace {

Graph build_dataset(const ExperimentSpec& spec) {
    switch (spec.dataset) {
        case DatasetKind::Fs: {
            FsGenSpec g;
            g.seed = spec.dataset_seed;
            g.target_vertices = spec.target_vertices;
            return generate_fs(g);
        }
        case DatasetKind::Gis: {
            GisGenSpec g;
            g.seed = spec.dataset_seed;
            g.target_vertices = spec.target_vertices;
            return generate_gis(g);
        }
        case DatasetKind::Social: {
            SocialGenSpec g;
            g.seed = spec.dataset_seed;
            g.target_vertices = spec.target_vertices;
            return generate_social(g);
        }
    }
    throw std::invalid_argument("unknown dataset kind");
}

}  // namespace

ExperimentContext::ExperimentContext(const ExperimentSpec& spec)
    : spec_(spec), graph_(build_dataset(spec)) {
    WorkloadSpec w;
    w.pattern = spec_.pattern;
    w.num_ops = spec_.num_ops;
    w.seed = spec_.workload_seed;
    eval_log_ = generate_operations(graph_, w);
}

void ExperimentContext::ensure_didic_baseline() {
    if (didic_map_) return;
    PartitionMap p0 = partition_random(graph_, spec_.k, spec_.partition_seed);
    DidicPartitioner part(graph_, p0, spec_.didic);
    part.run(spec_.didic.iterations);
    didic_map_ = part.partitioning();
    didic_state_ = part.state();
}

const PartitionMap& ExperimentContext::didic_baseline() const {
    if (!didic_map_) throw std::logic_error("didic baseline not built");
    return *didic_map_;
}

const LoadState& ExperimentContext::didic_load_state() const {
    if (!didic_state_) throw std::logic_error("didic baseline not built");
    return *didic_state_;
}

PartitionMap ExperimentContext::make_partitioning(PartitionMethod method) const {
    switch (method) {
        case PartitionMethod::Random:
            return partition_random(graph_, spec_.k, spec_.partition_seed);
        case PartitionMethod::HardcodedFs: return partition_fs_subtrees(graph_, spec_.k);
        case PartitionMethod::HardcodedGisLon: return partition_gis_longitude(graph_, spec_.k);
        case PartitionMethod::Didic: {
            auto* self = const_cast<ExperimentContext*>(this);
            self->ensure_didic_baseline();
            return *didic_map_;
        }
    }
    throw std::invalid_argument("unknown partitioning method");
}

MetricsRow ExperimentContext::measure(const PartitionMap& map, const std::string& method_label,
                                      double level, std::uint64_t sample,
                                      std::vector<OpTrafficSample>* op_series) const {
    Emulator em(graph_, map);
    std::vector<OpTrafficSample> samples = replay_log(em, eval_log_);

    MetricsRow row;
    row.experiment = to_string(spec_.kind);
    row.dataset = to_string(spec_.dataset);
    row.method = method_label;
    row.k = spec_.k;
    row.dynamism_level = level;
    row.sample = sample;

    UndirectedView uv(graph_);
    QualityReport q = quality_report(uv, map, spec_.k);
    row.edge_cut_weight = q.edge_cut_weight;
    row.edge_cut_fraction = q.edge_cut_fraction;
    row.conductance = q.conductance;
    row.modularity = q.modularity;
    row.partition_size_stdev = q.partition_size_stdev;

    std::vector<double> vtx, edg, traf;
    for (const InstanceInfo& info : em.snapshot_all()) {
        vtx.push_back(static_cast<double>(info.num_vertices));
        edg.push_back(static_cast<double>(info.num_edges));
        traf.push_back(static_cast<double>(info.local_traffic + info.global_traffic));
    }
    auto safe_cov = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        return mean > 0.0 ? coefficient_of_variation(v) : 0.0;
    };
    row.cov_vertices = safe_cov(vtx);
    row.cov_edges = safe_cov(edg);
    row.cov_traffic = safe_cov(traf);

    row.local_traffic = em.total_local_traffic();
    row.global_traffic = em.total_global_traffic();
    row.total_traffic = row.local_traffic + row.global_traffic;
    row.pct_global = row.total_traffic > 0
                         ? percentage_global(row.total_traffic, row.global_traffic)
                         : 0.0;

    if (op_series) {
        std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
            auto ta = a.local + a.global;
            auto tb = b.local + b.global;
            return ta != tb ? ta > tb : a.seq < b.seq;
        });
        *op_series = std::move(samples);
    }
    return row;
}

// --- Drivers -------------------------------------------------------------------

ExperimentResult run_static(ExperimentContext& ctx) {
    ExperimentResult result;
    for (PartitionMethod method : ctx.spec().methods) {
        PartitionMap map = ctx.make_partitioning(method);
        result.rows.push_back(ctx.measure(map, to_string(method)));
    }
    return result;
}

namespace {

std::string cell_name(InsertPolicy policy, double level) {
    std::ostringstream os;
    os << to_string(policy) << '_' << format_double(level);
    return os.str();
}

ChangeLog to_change_log(const DynamismLog& log) {
    ChangeLog changes;
    for (const DynamismRecord& r : log.records)
        changes.push_back({ChangeRecord::Move, r.vertex, r.target});
    return changes;
}

}  // namespace

ExperimentResult run_insert(ExperimentContext& ctx, std::map<std::string, DynamismLog>* logs_out) {
    ctx.ensure_didic_baseline();
    ExperimentResult result;
    std::uint64_t sample = 0;
    for (InsertPolicy policy : ctx.spec().policies) {
        for (double level : ctx.spec().levels) {
            Emulator em(ctx.graph(), ctx.didic_baseline());
            DynamismSpec d;
            d.policy = policy;
            d.level = level;
            d.seed = ctx.spec().dynamism_seed;
            d.interleave_reads = policy == InsertPolicy::LeastTraffic;
            DynamismLog log = gen_dynamism(em, d, &ctx.eval_log());
            if (logs_out) (*logs_out)[cell_name(policy, level)] = log;
            result.rows.push_back(
                ctx.measure(em.partition_map(), to_string(policy), level, sample++));
        }
    }
    return result;
}

ExperimentResult run_stress(ExperimentContext& ctx,
                            const std::map<std::string, DynamismLog>* insert_logs) {
    ctx.ensure_didic_baseline();
    std::map<std::string, DynamismLog> generated;
    if (!insert_logs) {
        run_insert(ctx, &generated);
        insert_logs = &generated;
    }
    ExperimentResult result;
    std::uint64_t sample = 0;
    for (InsertPolicy policy : ctx.spec().policies) {
        for (double level : ctx.spec().levels) {
            auto it = insert_logs->find(cell_name(policy, level));
            if (it == insert_logs->end())
                throw std::logic_error("missing insert dynamism log for " +
                                       cell_name(policy, level));
            // degrade the baseline, then repair with one DiDiC iteration
            Emulator em(ctx.graph(), ctx.didic_baseline());
            apply_dynamism(em, it->second);
            DidicConfig cfg = ctx.spec().didic;
            DidicPartitioner part =
                ctx.spec().reinit_loads
                    ? DidicPartitioner(ctx.graph(), em.partition_map(), cfg)
                    : DidicPartitioner(ctx.graph(), em.partition_map(), cfg,
                                       ctx.didic_load_state());
            if (!ctx.spec().reinit_loads) part.adapt_to_changes(to_change_log(it->second));
            part.iterate();
            result.rows.push_back(
                ctx.measure(part.partitioning(), to_string(policy), level, sample++));
        }
    }
    return result;
}

ExperimentResult run_dynamic(ExperimentContext& ctx) {
    ctx.ensure_didic_baseline();
    const std::uint32_t slices = 5;
    const double slice_level = 0.05;

    // the full 25 % random-dynamism log, split into five 5 % slices
    Emulator gen_em(ctx.graph(), ctx.didic_baseline());
    DynamismSpec d;
    d.policy = InsertPolicy::Random;
    d.level = slice_level * slices;
    d.seed = ctx.spec().dynamism_seed;
    DynamismLog full = gen_dynamism(gen_em, d);

    ExperimentResult result;
    result.rows.push_back(ctx.measure(ctx.didic_baseline(), "didic_dynamic", 0.0, 0));

    DidicConfig cfg = ctx.spec().didic;
    std::optional<DidicPartitioner> part;
    part.emplace(ctx.graph(), ctx.didic_baseline(), cfg, ctx.didic_load_state());
    std::size_t n = full.records.size();
    for (std::uint32_t s = 0; s < slices; ++s) {
        DynamismLog slice;
        slice.seed = full.seed;
        std::size_t lo = n * s / slices;
        std::size_t hi = n * (s + 1) / slices;
        slice.records.assign(full.records.begin() + lo, full.records.begin() + hi);
        if (ctx.spec().reinit_loads) {
            PartitionMap degraded = part->partitioning();
            for (const DynamismRecord& r : slice.records) degraded.assign(r.vertex, r.target);
            part.emplace(ctx.graph(), degraded, cfg);
        } else {
            part->adapt_to_changes(to_change_log(slice));
        }
        part->iterate();
        result.rows.push_back(ctx.measure(part->partitioning(), "didic_dynamic", slice_level,
                                          s + 1));
    }
    return result;
}

// --- File driver -------------------------------------------------------------------

void run_experiment_to_files(const ExperimentSpec& spec, const Config& provenance) {
    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);

    // provenance: exact input spec, seeds included
    {
        std::ofstream prov(fs::path(spec.out_dir) / "provenance.txt");
        prov << "experiment.kind = " << to_string(spec.kind) << '\n';
        prov << "dataset.kind = " << to_string(spec.dataset) << '\n';
        prov << "dataset.target_vertices = " << spec.target_vertices << '\n';
        prov << "dataset.seed = " << spec.dataset_seed << '\n';
        prov << "partition.k = " << spec.k << '\n';
        prov << "partition.seed = " << spec.partition_seed << '\n';
        prov << "workload.pattern = " << to_string(spec.pattern) << '\n';
        prov << "workload.num_ops = " << spec.num_ops << '\n';
        prov << "workload.seed = " << spec.workload_seed << '\n';
        prov << "dynamism.seed = " << spec.dynamism_seed << '\n';
        prov << "didic.iterations = " << spec.didic.iterations << '\n';
        prov << "didic.psi = " << spec.didic.primary_steps << '\n';
        prov << "didic.rho = " << spec.didic.secondary_steps << '\n';
        prov << "didic.seed = " << spec.didic.seed << '\n';
        for (const auto& [key, value] : provenance.values())
            prov << "input." << key << " = " << value << '\n';
    }

    ExperimentContext ctx(spec);
    std::string base = to_string(spec.kind);

    auto write_rows = [&](const ExperimentResult& r) {
        std::ofstream out(fs::path(spec.out_dir) / (base + ".csv"));
        write_metrics_csv(r.rows, out);
    };

    switch (spec.kind) {
        case ExperimentKind::Static: {
            ExperimentResult result;
            for (PartitionMethod method : spec.methods) {
                PartitionMap map = ctx.make_partitioning(method);
                std::vector<OpTrafficSample> series;
                result.rows.push_back(ctx.measure(map, to_string(method), 0.0, 0, &series));
                std::ofstream ops(fs::path(spec.out_dir) /
                                  (base + "_ops_" + to_string(method) + ".csv"));
                write_op_traffic_csv(series, ops);
                std::ofstream pm(fs::path(spec.out_dir) /
                                 (base + "_map_" + to_string(method) + ".part"));
                write_partition_map(map, pm);
            }
            write_rows(result);
            break;
        }
        case ExperimentKind::Insert: {
            std::map<std::string, DynamismLog> logs;
            ExperimentResult result = run_insert(ctx, &logs);
            for (const auto& [name, log] : logs) {
                std::ofstream out(fs::path(spec.out_dir) / ("insert_" + name + ".dynlog"));
                write_dynamism_log(log, out);
            }
            write_rows(result);
            break;
        }
        case ExperimentKind::Stress: {
            // chain: reuse insert's logs byte-identically when present on disk
            std::map<std::string, DynamismLog> logs;
            bool loaded = true;
            for (InsertPolicy policy : spec.policies)
                for (double level : spec.levels) {
                    std::string name = cell_name(policy, level);
                    fs::path p = fs::path(spec.out_dir) / ("insert_" + name + ".dynlog");
                    if (!fs::exists(p)) {
                        loaded = false;
                        break;
                    }
                    std::ifstream in(p);
                    logs[name] = read_dynamism_log(in);
                }
            ExperimentResult result = run_stress(ctx, loaded ? &logs : nullptr);
            write_rows(result);
            break;
        }
        case ExperimentKind::Dynamic: {
            write_rows(run_dynamic(ctx));
            break;
        }
    }
}

}  // namespace partsim
