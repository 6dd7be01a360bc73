// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "partsim/emulator.hpp"
#include "partsim/graph.hpp"
#include "partsim/io.hpp"

namespace partsim {

struct WorkloadSpec {
    OpKind pattern = OpKind::FsBfs;
    std::uint32_t num_ops = 10000;
    std::uint64_t seed = 1;
    // GIS start sampling: the default weights vertices toward cities
    // (1/(1+distance)); the literal flag weights them away instead.
    bool gis_literal_distance_sampling = false;
    double gis_walk_mean = 11.0;  // short-operation walk length mean
};

enum class InsertPolicy : std::uint8_t { Random, FewestVertices, LeastTraffic };

const char* to_string(InsertPolicy p);
InsertPolicy insert_policy_from_string(const std::string& s);

struct DynamismSpec {
    InsertPolicy policy = InsertPolicy::Random;
    double level = 0.01;  // fraction of |V| moved
    std::uint64_t seed = 1;
    bool interleave_reads = false;
    std::uint32_t interleave_batches = 5;
};

// --- Operation generation -------------------------------------------------------

OperationLog gen_fs_ops(const Graph& g, const WorkloadSpec& spec);
OperationLog gen_gis_ops(const Graph& g, const WorkloadSpec& spec);  // pattern picks short/long
OperationLog gen_social_ops(const Graph& g, const WorkloadSpec& spec);
OperationLog generate_operations(const Graph& g, const WorkloadSpec& spec);

// --- Execution --------------------------------------------------------------------

struct OpTraffic {
    std::uint64_t local = 0;
    std::uint64_t global = 0;
};

OpTraffic exec_fs_op(Emulator& em, const OperationRecord& op);
OpTraffic exec_gis_op(Emulator& em, const OperationRecord& op, double heuristic_factor);
OpTraffic exec_social_op(Emulator& em, const OperationRecord& op);

// Largest admissible straight-line-to-cost factor for A*: the minimum over
// edges of weight / endpoint distance.
double gis_heuristic_factor(const Graph& g);

OpTraffic exec_operation(Emulator& em, const OperationRecord& op, double heuristic_factor = 0.0);

// Sequential replay; one traffic sample per operation.
std::vector<OpTrafficSample> replay_log(Emulator& em, const OperationLog& log);

// --- Dynamism ----------------------------------------------------------------------

// Generates moves and applies them to the handle as it goes (the policies
// read the handle's evolving counters). LeastTraffic requires a workload to
// interleave with.
DynamismLog gen_dynamism(Emulator& em, const DynamismSpec& spec,
                         const OperationLog* workload = nullptr);

void apply_dynamism(Emulator& em, const DynamismLog& log);

// FS tree structure recovered from vertex kinds: parent pointers, levels,
// and the owning user's root folder. Shared by workloads and tests.
struct FsTreeIndex {
    std::vector<VertexId> parent;       // -1 for roots
    std::vector<std::uint32_t> level;   // depth below the owning user
    explicit FsTreeIndex(const Graph& g);
    // chain from v (inclusive) up to the owning user's root folder (inclusive)
    std::vector<VertexId> ancestor_chain(const Graph& g, VertexId v) const;
};

}  // namespace partsim
