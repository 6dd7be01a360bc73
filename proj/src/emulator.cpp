// SPDX-License-Identifier: Apache-2.0
#include "partsim/emulator.hpp"

#include <stdexcept>

namespace partsim {

Emulator::Emulator(const Graph& g, PartitionMap p) : graph_(g), partitions_(std::move(p)) {
    if (partitions_.size() != g.num_vertices())
        throw std::invalid_argument("partition map does not cover the graph");
    infos_.resize(partitions_.k());
    for (PartitionId i = 0; i < partitions_.k(); ++i) infos_[i].pid = i;
    for (VertexId v = 0; v < g.num_vertices(); ++v) ++infos_[partitions_[v]].num_vertices;
    for (const Edge& e : g.edges()) ++infos_[partitions_[e.start]].num_edges;
}

void Emulator::charge_local(Cursor& cur) {
    ++infos_[cur.partition].local_traffic;
    ++cur.op_local;
}

void Emulator::charge_edge(Cursor& cur, EdgeId e) {
    const Edge& ed = graph_.edge(e);
    if (partitions_[ed.start] != partitions_[ed.end]) {
        ++infos_[cur.partition].global_traffic;
        ++cur.op_global;
    } else {
        charge_local(cur);
    }
}

const Vertex& Emulator::lookup_vertex(Cursor& cur, VertexId v) {
    const Vertex& vx = graph_.vertex(v);
    cur.partition = partitions_[v];
    charge_local(cur);
    return vx;
}

VertexId Emulator::get_vertex_id(Cursor& cur, VertexId v) {
    charge_local(cur);
    return graph_.vertex(v).id;
}

double Emulator::get_vertex_property(Cursor& cur, VertexId v, const std::string& key) {
    charge_local(cur);
    return graph_.property(v, key);
}

EdgeId Emulator::get_edge_id(Cursor& cur, EdgeId e) {
    charge_local(cur);
    return graph_.edge(e).id;
}

double Emulator::get_edge_property(Cursor& cur, EdgeId e, const std::string& key) {
    charge_local(cur);
    if (key == "weight") return graph_.edge(e).weight;
    const PropertyMap& props = graph_.edge(e).properties;
    auto it = props.find(key);
    if (it == props.end())
        throw std::out_of_range("edge " + std::to_string(e) + " has no property " + key);
    return it->second;
}

std::vector<EdgeId> Emulator::get_edges(Cursor& cur, VertexId v, Direction dir) {
    std::vector<EdgeId> result;
    if (dir == Direction::Out || dir == Direction::Both)
        for (EdgeId e : graph_.out_edges(v)) result.push_back(e);
    if (dir == Direction::In || dir == Direction::Both)
        for (EdgeId e : graph_.in_edges(v)) result.push_back(e);
    for (EdgeId e : result) charge_edge(cur, e);
    return result;
}

std::vector<EdgeId> Emulator::get_edges(Cursor& cur, VertexId v, Direction dir,
                                        const std::string& label_filter) {
    std::vector<EdgeId> result;
    if (dir == Direction::Out || dir == Direction::Both)
        for (EdgeId e : graph_.out_edges(v))
            if (graph_.edge(e).label == label_filter) result.push_back(e);
    if (dir == Direction::In || dir == Direction::Both)
        for (EdgeId e : graph_.in_edges(v))
            if (graph_.edge(e).label == label_filter) result.push_back(e);
    for (EdgeId e : result) charge_edge(cur, e);
    return result;
}

const Edge& Emulator::get_edge(Cursor& cur, EdgeId e) {
    charge_edge(cur, e);
    return graph_.edge(e);
}

const Vertex& Emulator::get_end_vertex(Cursor& cur, EdgeId e) {
    const Edge& ed = graph_.edge(e);
    charge_local(cur);
    cur.partition = partitions_[ed.end];
    return graph_.vertex(ed.end);
}

const Vertex& Emulator::get_start_vertex(Cursor& cur, EdgeId e) {
    const Edge& ed = graph_.edge(e);
    charge_local(cur);
    cur.partition = partitions_[ed.start];
    return graph_.vertex(ed.start);
}

void Emulator::move_vertex(VertexId v, PartitionId target) {
    if (target >= partitions_.k()) throw std::out_of_range("target partition out of range");
    PartitionId from = partitions_[v];
    if (from == target) return;
    partitions_.assign(v, target);
    --infos_[from].num_vertices;
    ++infos_[target].num_vertices;
    std::uint64_t edges = graph_.out_edges(v).size();
    infos_[from].num_edges -= edges;
    infos_[target].num_edges += edges;
}

void Emulator::move_vertices(const std::vector<VertexId>& vs, PartitionId target) {
    for (VertexId v : vs) move_vertex(v, target);
}

const InstanceInfo& Emulator::instance_info(PartitionId pid) const {
    if (pid >= infos_.size()) throw std::out_of_range("unknown partition id");
    return infos_[pid];
}

std::uint64_t Emulator::total_local_traffic() const {
    std::uint64_t sum = 0;
    for (const InstanceInfo& i : infos_) sum += i.local_traffic;
    return sum;
}

std::uint64_t Emulator::total_global_traffic() const {
    std::uint64_t sum = 0;
    for (const InstanceInfo& i : infos_) sum += i.global_traffic;
    return sum;
}

void Emulator::reset_traffic() {
    for (InstanceInfo& i : infos_) {
        i.local_traffic = 0;
        i.global_traffic = 0;
    }
}

}  // namespace partsim
