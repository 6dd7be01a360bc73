// SPDX-License-Identifier: Apache-2.0
#include "partsim/baselines.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace partsim {

const char* to_string(PartitionMethod m) {
    switch (m) {
        case PartitionMethod::Random: return "random";
        case PartitionMethod::HardcodedFs: return "hardcoded_fs";
        case PartitionMethod::HardcodedGisLon: return "hardcoded_gis";
        case PartitionMethod::Didic: return "didic";
    }
    return "random";
}

PartitionMethod partition_method_from_string(const std::string& s) {
    if (s == "random") return PartitionMethod::Random;
    if (s == "hardcoded_fs") return PartitionMethod::HardcodedFs;
    if (s == "hardcoded_gis") return PartitionMethod::HardcodedGisLon;
    if (s == "didic") return PartitionMethod::Didic;
    throw std::invalid_argument("unknown partitioning method: " + s);
}

PartitionMap partition_random(const Graph& g, std::uint32_t k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    PartitionMap p(g.num_vertices(), k);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, k - 1);
    for (VertexId v = 0; v < g.num_vertices(); ++v) p.assign(v, dist(rng));
    return p;
}

namespace {

PartitionId majority_partition(const std::vector<PartitionId>& votes, std::uint32_t k) {
    std::vector<std::size_t> counts(k, 0);
    for (PartitionId v : votes) ++counts[v];
    PartitionId best = 0;
    for (PartitionId i = 1; i < k; ++i)
        if (counts[i] > counts[best]) best = i;
    return best;
}

}  // namespace

PartitionMap partition_fs_subtrees(const Graph& g, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");

    bool has_folder = false;
    for (const Vertex& v : g.vertices())
        if (v.kind == VertexKind::Folder) has_folder = true;
    if (!has_folder && g.num_vertices() > 0)
        throw std::invalid_argument("subtree partitioning requires a file-system graph");

    // Tree structure: parent links and child-folder lists along FOLDER edges.
    std::vector<std::vector<VertexId>> child_folders(g.num_vertices());
    std::vector<VertexId> parent(g.num_vertices(), static_cast<VertexId>(-1));
    for (const Edge& e : g.edges()) {
        VertexKind sk = g.vertex(e.start).kind;
        VertexKind ek = g.vertex(e.end).kind;
        if (sk == VertexKind::Event || ek == VertexKind::Event) continue;
        if (ek == VertexKind::Org) continue;  // user -> org membership edge
        parent[e.end] = e.start;
        if (sk == VertexKind::Folder && ek == VertexKind::Folder)
            child_folders[e.start].push_back(e.end);
    }

    // Leaf folders in depth-first visitation order, so subtree neighbors sit
    // adjacent in the list.
    std::vector<VertexId> leaves;
    std::vector<VertexId> stack;
    for (const Vertex& v : g.vertices()) {
        bool is_root_folder = v.kind == VertexKind::Folder &&
                              (parent[v.id] == static_cast<VertexId>(-1) ||
                               g.vertex(parent[v.id]).kind == VertexKind::User);
        if (!is_root_folder) continue;
        stack.push_back(v.id);
        while (!stack.empty()) {
            VertexId f = stack.back();
            stack.pop_back();
            if (child_folders[f].empty()) {
                leaves.push_back(f);
            } else {
                for (auto it = child_folders[f].rbegin(); it != child_folders[f].rend(); ++it)
                    stack.push_back(*it);
            }
        }
    }

    PartitionMap p(g.num_vertices(), k);
    std::vector<bool> assigned(g.num_vertices(), false);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        auto pid = static_cast<PartitionId>(i * k / std::max<std::size_t>(leaves.size(), 1));
        p.assign(leaves[i], pid);
        assigned[leaves[i]] = true;
    }

    // Ancestor folders by majority of their child folders, deepest first.
    std::vector<VertexId> folders;
    for (const Vertex& v : g.vertices())
        if (v.kind == VertexKind::Folder && !child_folders[v.id].empty())
            folders.push_back(v.id);
    std::vector<std::uint32_t> depth(g.num_vertices(), 0);
    for (const Vertex& v : g.vertices()) {
        std::uint32_t d = 0;
        for (VertexId cur = v.id; parent[cur] != static_cast<VertexId>(-1); cur = parent[cur]) ++d;
        depth[v.id] = d;
    }
    std::sort(folders.begin(), folders.end(), [&](VertexId a, VertexId b) {
        return depth[a] != depth[b] ? depth[a] > depth[b] : a < b;
    });
    for (VertexId f : folders) {
        std::vector<PartitionId> votes;
        for (VertexId c : child_folders[f]) votes.push_back(p[c]);
        p.assign(f, majority_partition(votes, k));
        assigned[f] = true;
    }

    // Non-folder vertices follow their parent (files, users), membership (orgs),
    // or the entity they describe (events).
    for (const Vertex& v : g.vertices()) {
        if (v.kind == VertexKind::File) {
            if (parent[v.id] != static_cast<VertexId>(-1)) p.assign(v.id, p[parent[v.id]]);
            assigned[v.id] = true;
        } else if (v.kind == VertexKind::User) {
            std::vector<PartitionId> votes;
            for (EdgeId e : g.out_edges(v.id))
                if (g.vertex(g.edge(e).end).kind == VertexKind::Folder)
                    votes.push_back(p[g.edge(e).end]);
            if (!votes.empty()) p.assign(v.id, majority_partition(votes, k));
            assigned[v.id] = true;
        }
    }
    for (const Vertex& v : g.vertices()) {
        if (v.kind == VertexKind::Org) {
            std::vector<PartitionId> votes;
            for (EdgeId e : g.in_edges(v.id))
                if (g.vertex(g.edge(e).start).kind == VertexKind::User)
                    votes.push_back(p[g.edge(e).start]);
            if (!votes.empty()) p.assign(v.id, majority_partition(votes, k));
        } else if (v.kind == VertexKind::Event) {
            // follow the described file/folder, falling back to the actor
            PartitionId target = 0;
            bool found = false;
            for (EdgeId e : g.out_edges(v.id)) {
                VertexKind ek = g.vertex(g.edge(e).end).kind;
                if (ek == VertexKind::File || ek == VertexKind::Folder) {
                    target = p[g.edge(e).end];
                    found = true;
                    break;
                }
            }
            if (!found && !g.out_edges(v.id).empty()) target = p[g.edge(g.out_edges(v.id)[0]).end];
            p.assign(v.id, target);
        }
    }
    return p;
}

PartitionMap partition_gis_longitude(const Graph& g, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::vector<VertexId> order(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!g.has_property(v, "longitude"))
            throw std::invalid_argument("vertex " + std::to_string(v) + " lacks a longitude");
        order[v] = v;
    }
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        double la = g.property(a, "longitude");
        double lb = g.property(b, "longitude");
        return la != lb ? la < lb : a < b;
    });
    PartitionMap p(g.num_vertices(), k);
    for (std::size_t i = 0; i < order.size(); ++i)
        p.assign(order[i], static_cast<PartitionId>(i * k / std::max<std::size_t>(order.size(), 1)));
    return p;
}

}  // namespace partsim
