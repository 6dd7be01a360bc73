// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "partsim/graph.hpp"

namespace partsim {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

// --- Chaco -----------------------------------------------------------------
//
// Header "num_vertices num_edges [fmt]" where fmt's last digit flags edge
// weights. Adjacency is stored redundantly (each undirected edge on both
// endpoint lines); the loader keeps the occurrence with line-vertex < neighbor
// and stores it as a directed edge from the lower id.

Graph read_chaco(std::istream& in);
void write_chaco(const Graph& g, std::ostream& out);

// --- GML -------------------------------------------------------------------
//
// graph [ node [ id N kind "..." partition P <props> ] edge [ source S target T ... ] ].
// Vertex kind, partition id, and scalar properties round-trip exactly.

Graph read_gml(std::istream& in);
Graph read_gml(std::istream& in, PartitionMap* partitions);
void write_gml(const Graph& g, std::ostream& out, const PartitionMap* partitions = nullptr);

// --- Operation logs ----------------------------------------------------------

enum class OpKind : std::uint8_t { FsBfs, GisAstarShort, GisAstarLong, SocialFoaf };

const char* to_string(OpKind k);
OpKind op_kind_from_string(const std::string& s);

struct OperationRecord {
    std::uint64_t seq = 0;
    OpKind kind = OpKind::FsBfs;
    VertexId start = 0;
    VertexId end = 0;  // unused for SOCIAL_FOAF (kept 0)
    bool operator==(const OperationRecord&) const = default;
};

struct OperationLog {
    std::uint64_t seed = 0;
    std::vector<OperationRecord> records;
    bool operator==(const OperationLog&) const = default;
};

void write_operation_log(const OperationLog& log, std::ostream& out);
OperationLog read_operation_log(std::istream& in);

// --- Dynamism logs -----------------------------------------------------------

struct DynamismRecord {
    std::uint64_t seq = 0;
    VertexId vertex = 0;
    PartitionId target = 0;
    bool operator==(const DynamismRecord&) const = default;
};

struct DynamismLog {
    std::uint64_t seed = 0;
    std::vector<DynamismRecord> records;
    bool operator==(const DynamismLog&) const = default;
};

void write_dynamism_log(const DynamismLog& log, std::ostream& out);
DynamismLog read_dynamism_log(std::istream& in);

// --- Partition maps ----------------------------------------------------------

void write_partition_map(const PartitionMap& p, std::ostream& out);
PartitionMap read_partition_map(std::istream& in);

// --- Metrics CSV -------------------------------------------------------------

struct MetricsRow {
    std::string experiment;
    std::string dataset;
    std::string method;   // partitioning method or policy
    std::uint32_t k = 1;
    double dynamism_level = 0.0;
    std::uint64_t sample = 0;  // time-series index
    double edge_cut_weight = 0.0;
    double edge_cut_fraction = 0.0;
    double conductance = 0.0;
    double modularity = 0.0;
    double partition_size_stdev = 0.0;
    double cov_vertices = 0.0;
    double cov_edges = 0.0;
    double cov_traffic = 0.0;
    double pct_global = 0.0;
    std::uint64_t total_traffic = 0;
    std::uint64_t local_traffic = 0;
    std::uint64_t global_traffic = 0;
};

void write_metrics_csv(const std::vector<MetricsRow>& rows, std::ostream& out);

// Per-operation traffic series (the sorted global-fraction plots).
struct OpTrafficSample {
    std::uint64_t seq = 0;
    std::uint64_t local = 0;
    std::uint64_t global = 0;
};

void write_op_traffic_csv(const std::vector<OpTrafficSample>& samples, std::ostream& out);

// Deterministic decimal formatting shared by every CSV writer.
std::string format_double(double v);

// Convenience file wrappers.
Graph read_graph_file(const std::string& path);  // dispatches on .gml/.graph extension
void write_graph_file(const Graph& g, const std::string& path,
                      const PartitionMap* partitions = nullptr);

}  // namespace partsim
