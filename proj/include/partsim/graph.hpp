// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace partsim {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using PartitionId = std::uint32_t;

enum class VertexKind : std::uint8_t {
    Plain,
    File,
    Folder,
    User,
    Org,
    Event,
    GisPoint,
    SocialUser,
};

const char* to_string(VertexKind k);
VertexKind vertex_kind_from_string(const std::string& s);

// Scalar vertex/edge properties (coordinates, travel weights, ...).
using PropertyMap = std::map<std::string, double>;

struct Vertex {
    VertexId id = 0;
    VertexKind kind = VertexKind::Plain;
    PropertyMap properties;
};

struct Edge {
    EdgeId id = 0;
    VertexId start = 0;
    VertexId end = 0;
    double weight = 1.0;  // in (0, 1]
    std::string label;
    PropertyMap properties;
};

enum class Direction { In, Out, Both };

// In-memory directed weighted multigraph with dense ids and per-vertex
// adjacency indices. Mutation requires exclusive access; concurrent
// readers are safe.
class Graph {
  public:
    Graph() = default;

    VertexId add_vertex(VertexKind kind = VertexKind::Plain, PropertyMap props = {});
    EdgeId add_edge(VertexId start, VertexId end, double weight = 1.0,
                    std::string label = {}, PropertyMap props = {});

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const Vertex& vertex(VertexId v) const {
        check_vertex(v);
        return vertices_[v];
    }
    Vertex& vertex(VertexId v) {
        check_vertex(v);
        return vertices_[v];
    }
    const Edge& edge(EdgeId e) const {
        check_edge(e);
        return edges_[e];
    }

    const std::vector<EdgeId>& out_edges(VertexId v) const {
        check_vertex(v);
        return out_adj_[v];
    }
    const std::vector<EdgeId>& in_edges(VertexId v) const {
        check_vertex(v);
        return in_adj_[v];
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Sum of edge weights incident to v per the requested view; Both = In + Out.
    double degree(VertexId v, Direction view = Direction::Both) const;
    // Unweighted incident-edge count.
    std::size_t degree_count(VertexId v, Direction view = Direction::Both) const;

    bool has_property(VertexId v, const std::string& key) const;
    double property(VertexId v, const std::string& key) const;

  private:
    void check_vertex(VertexId v) const {
        if (v >= vertices_.size()) throw std::out_of_range("unknown vertex id " + std::to_string(v));
    }
    void check_edge(EdgeId e) const {
        if (e >= edges_.size()) throw std::out_of_range("unknown edge id " + std::to_string(e));
    }

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_adj_;
    std::vector<std::vector<EdgeId>> in_adj_;
};

// Total assignment of vertices to partitions; an edge resides on the
// partition of its start vertex.
class PartitionMap {
  public:
    PartitionMap() = default;
    PartitionMap(std::size_t num_vertices, std::uint32_t k, PartitionId initial = 0)
        : k_(k), assignment_(num_vertices, initial) {
        if (k == 0) throw std::invalid_argument("partition count must be >= 1");
        if (initial >= k) throw std::invalid_argument("initial partition out of range");
    }

    std::uint32_t k() const { return k_; }
    std::size_t size() const { return assignment_.size(); }

    PartitionId operator[](VertexId v) const { return assignment_.at(v); }
    void assign(VertexId v, PartitionId p) {
        if (p >= k_) throw std::out_of_range("partition id out of range");
        assignment_.at(v) = p;
    }

    const std::vector<PartitionId>& assignments() const { return assignment_; }

    // Residence partition of an edge: its start vertex's partition.
    PartitionId edge_partition(const Graph& g, EdgeId e) const { return assignment_.at(g.edge(e).start); }

    std::vector<std::size_t> partition_sizes() const;

    bool operator==(const PartitionMap&) const = default;

  private:
    std::uint32_t k_ = 1;
    std::vector<PartitionId> assignment_;
};

bool is_inter_edge(const Graph& g, const PartitionMap& p, EdgeId e);

// Symmetric merged-incidence view of a directed graph. Parallel directed
// edges between an unordered pair merge by weight summation, clamped to 1.0
// so the diffusion precondition wt <= 1 survives the merge.
class UndirectedView {
  public:
    struct Incidence {
        VertexId neighbor;
        double weight;
    };

    explicit UndirectedView(const Graph& g);

    std::size_t num_vertices() const { return incidences_.size(); }
    std::size_t num_pairs() const { return num_pairs_; }
    double total_weight() const { return total_weight_; }

    const std::vector<Incidence>& incidences(VertexId v) const { return incidences_.at(v); }

    // Weighted degree: sum of merged incidence weights at v.
    double degree(VertexId v) const;
    // Unweighted degree: number of distinct neighbors (self-loop counts once).
    std::size_t degree_count(VertexId v) const { return incidences_.at(v).size(); }

    // Enumerates each unordered pair {u,v} with u <= v exactly once.
    template <typename Fn>
    void for_each_pair(Fn&& fn) const {
        for (VertexId u = 0; u < incidences_.size(); ++u)
            for (const Incidence& inc : incidences_[u])
                if (inc.neighbor >= u) fn(u, inc.neighbor, inc.weight);
    }

  private:
    std::vector<std::vector<Incidence>> incidences_;
    std::size_t num_pairs_ = 0;
    double total_weight_ = 0.0;
};

}  // namespace partsim
