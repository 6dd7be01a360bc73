// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "partsim/graph.hpp"

namespace partsim {

// Logically partitioned graph-database emulator. Partitions are ids only;
// every traversal access is charged one traffic unit against the partition
// the cursor currently sits on. Retrieving an edge whose endpoints live on
// different partitions is the single potentially-global action; everything
// else (lookups, ids, properties, endpoint reads) stays local. Cross-
// partition references are not materialized; their observable cost is this
// one global unit per inter-edge retrieval.

struct InstanceInfo {
    PartitionId pid = 0;
    std::uint64_t num_vertices = 0;
    std::uint64_t num_edges = 0;
    std::uint64_t local_traffic = 0;
    std::uint64_t global_traffic = 0;
};

// Per-operation traversal state: current partition plus the operation's
// private traffic tallies.
struct Cursor {
    PartitionId partition = 0;
    std::uint64_t op_local = 0;
    std::uint64_t op_global = 0;
};

class Emulator {
  public:
    Emulator(const Graph& g, PartitionMap p);

    const Graph& graph() const { return graph_; }
    const PartitionMap& partition_map() const { return partitions_; }
    std::uint32_t k() const { return partitions_.k(); }

    Cursor begin_operation() const { return Cursor{}; }

    // Index lookup: one local unit on v's partition; the cursor relocates
    // there free of a global charge (lookups are an operation's entry point).
    const Vertex& lookup_vertex(Cursor& cur, VertexId v);

    // Property-class reads: one local unit on the cursor partition.
    VertexId get_vertex_id(Cursor& cur, VertexId v);
    double get_vertex_property(Cursor& cur, VertexId v, const std::string& key);
    EdgeId get_edge_id(Cursor& cur, EdgeId e);
    double get_edge_property(Cursor& cur, EdgeId e, const std::string& key);

    // Adjacency retrieval: one unit per returned edge, charged to the cursor
    // partition — global when the edge crosses partitions, local otherwise.
    std::vector<EdgeId> get_edges(Cursor& cur, VertexId v, Direction dir);
    std::vector<EdgeId> get_edges(Cursor& cur, VertexId v, Direction dir,
                                  const std::string& label_filter);
    // Single-edge flavor of the same charge.
    const Edge& get_edge(Cursor& cur, EdgeId e);

    // Endpoint reads: one local unit; get_end_vertex relocates the cursor to
    // the end vertex's partition (any crossing was charged at edge retrieval).
    const Vertex& get_end_vertex(Cursor& cur, EdgeId e);
    const Vertex& get_start_vertex(Cursor& cur, EdgeId e);

    // Partition management; traffic counters are untouched.
    void move_vertex(VertexId v, PartitionId target);
    void move_vertices(const std::vector<VertexId>& vs, PartitionId target);

    const InstanceInfo& instance_info(PartitionId pid) const;
    const std::vector<InstanceInfo>& snapshot_all() const { return infos_; }

    std::uint64_t total_local_traffic() const;
    std::uint64_t total_global_traffic() const;

    void reset_traffic();

  private:
    void charge_local(Cursor& cur);
    void charge_edge(Cursor& cur, EdgeId e);

    const Graph& graph_;
    PartitionMap partitions_;
    std::vector<InstanceInfo> infos_;
};

}  // namespace partsim
