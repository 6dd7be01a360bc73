// SPDX-License-Identifier: Apache-2.0
#include "partsim/graph.hpp"

#include <algorithm>

namespace partsim {

const char* to_string(VertexKind k) {
    switch (k) {
        case VertexKind::Plain: return "PLAIN";
        case VertexKind::File: return "FILE";
        case VertexKind::Folder: return "FOLDER";
        case VertexKind::User: return "USER";
        case VertexKind::Org: return "ORG";
        case VertexKind::Event: return "EVENT";
        case VertexKind::GisPoint: return "GIS_POINT";
        case VertexKind::SocialUser: return "SOCIAL_USER";
    }
    return "PLAIN";
}

VertexKind vertex_kind_from_string(const std::string& s) {
    if (s == "PLAIN") return VertexKind::Plain;
    if (s == "FILE") return VertexKind::File;
    if (s == "FOLDER") return VertexKind::Folder;
    if (s == "USER") return VertexKind::User;
    if (s == "ORG") return VertexKind::Org;
    if (s == "EVENT") return VertexKind::Event;
    if (s == "GIS_POINT") return VertexKind::GisPoint;
    if (s == "SOCIAL_USER") return VertexKind::SocialUser;
    throw std::invalid_argument("unknown vertex kind: " + s);
}

VertexId Graph::add_vertex(VertexKind kind, PropertyMap props) {
    VertexId id = static_cast<VertexId>(vertices_.size());
    vertices_.push_back(Vertex{id, kind, std::move(props)});
    out_adj_.emplace_back();
    in_adj_.emplace_back();
    return id;
}

EdgeId Graph::add_edge(VertexId start, VertexId end, double weight, std::string label,
                       PropertyMap props) {
    check_vertex(start);
    check_vertex(end);
    if (!(weight > 0.0) || weight > 1.0)
        throw std::invalid_argument("edge weight must lie in (0, 1]");
    EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{id, start, end, weight, std::move(label), std::move(props)});
    out_adj_[start].push_back(id);
    in_adj_[end].push_back(id);
    return id;
}

double Graph::degree(VertexId v, Direction view) const {
    check_vertex(v);
    double sum = 0.0;
    if (view == Direction::Out || view == Direction::Both)
        for (EdgeId e : out_adj_[v]) sum += edges_[e].weight;
    if (view == Direction::In || view == Direction::Both)
        for (EdgeId e : in_adj_[v]) sum += edges_[e].weight;
    return sum;
}

std::size_t Graph::degree_count(VertexId v, Direction view) const {
    check_vertex(v);
    std::size_t n = 0;
    if (view == Direction::Out || view == Direction::Both) n += out_adj_[v].size();
    if (view == Direction::In || view == Direction::Both) n += in_adj_[v].size();
    return n;
}

bool Graph::has_property(VertexId v, const std::string& key) const {
    return vertex(v).properties.contains(key);
}

double Graph::property(VertexId v, const std::string& key) const {
    const PropertyMap& props = vertex(v).properties;
    auto it = props.find(key);
    if (it == props.end())
        throw std::out_of_range("vertex " + std::to_string(v) + " has no property " + key);
    return it->second;
}

std::vector<std::size_t> PartitionMap::partition_sizes() const {
    std::vector<std::size_t> sizes(k_, 0);
    for (PartitionId p : assignment_) ++sizes[p];
    return sizes;
}

bool is_inter_edge(const Graph& g, const PartitionMap& p, EdgeId e) {
    const Edge& ed = g.edge(e);
    return p[ed.start] != p[ed.end];
}

UndirectedView::UndirectedView(const Graph& g) : incidences_(g.num_vertices()) {
    // Merge parallel directed edges per unordered pair, then mirror.
    std::vector<std::map<VertexId, double>> merged(g.num_vertices());
    for (const Edge& e : g.edges()) {
        VertexId lo = std::min(e.start, e.end);
        VertexId hi = std::max(e.start, e.end);
        merged[lo][hi] += e.weight;
    }
    for (VertexId lo = 0; lo < merged.size(); ++lo) {
        for (auto& [hi, w] : merged[lo]) {
            w = std::min(w, 1.0);
            ++num_pairs_;
            total_weight_ += w;
            incidences_[lo].push_back({hi, w});
            if (hi != lo) incidences_[hi].push_back({lo, w});
        }
    }
    for (auto& incs : incidences_)
        std::sort(incs.begin(), incs.end(),
                  [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
}

double UndirectedView::degree(VertexId v) const {
    double sum = 0.0;
    for (const Incidence& inc : incidences_.at(v)) sum += inc.weight;
    return sum;
}

}  // namespace partsim
