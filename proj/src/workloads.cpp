// SPDX-License-Identifier: Apache-2.0
#include "partsim/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>

#include "partsim/datasets.hpp"

namespace partsim {

const char* to_string(InsertPolicy p) {
    switch (p) {
        case InsertPolicy::Random: return "random";
        case InsertPolicy::FewestVertices: return "fewest_vertices";
        case InsertPolicy::LeastTraffic: return "least_traffic";
    }
    return "random";
}

InsertPolicy insert_policy_from_string(const std::string& s) {
    if (s == "random") return InsertPolicy::Random;
    if (s == "fewest_vertices") return InsertPolicy::FewestVertices;
    if (s == "least_traffic") return InsertPolicy::LeastTraffic;
    throw std::invalid_argument("unknown insert policy: " + s);
}

// --- FS tree index ------------------------------------------------------------------

FsTreeIndex::FsTreeIndex(const Graph& g)
    : parent(g.num_vertices(), static_cast<VertexId>(-1)), level(g.num_vertices(), 0) {
    for (const Edge& e : g.edges()) {
        VertexKind sk = g.vertex(e.start).kind;
        VertexKind ek = g.vertex(e.end).kind;
        if (sk == VertexKind::Event || ek == VertexKind::Event) continue;
        if (ek == VertexKind::Org) continue;
        parent[e.end] = e.start;
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        std::uint32_t d = 0;
        VertexId cur = v;
        while (parent[cur] != static_cast<VertexId>(-1) &&
               g.vertex(parent[cur]).kind != VertexKind::User) {
            cur = parent[cur];
            ++d;
        }
        level[v] = d;
    }
}

std::vector<VertexId> FsTreeIndex::ancestor_chain(const Graph& g, VertexId v) const {
    std::vector<VertexId> chain{v};
    VertexId cur = v;
    while (parent[cur] != static_cast<VertexId>(-1) &&
           g.vertex(parent[cur]).kind != VertexKind::User) {
        cur = parent[cur];
        chain.push_back(cur);
    }
    return chain;
}

// --- Operation generation --------------------------------------------------------------

OperationLog gen_fs_ops(const Graph& g, const WorkloadSpec& spec) {
    FsTreeIndex tree(g);
    std::vector<VertexId> candidates;
    std::vector<double> weights;
    for (const Vertex& v : g.vertices()) {
        if (v.kind != VertexKind::File && v.kind != VertexKind::Folder) continue;
        candidates.push_back(v.id);
        weights.push_back(g.degree(v.id, Direction::Both));
    }
    if (candidates.empty()) throw std::invalid_argument("graph has no file/folder vertices");

    std::mt19937_64 rng(spec.seed);
    std::discrete_distribution<std::size_t> end_dist(weights.begin(), weights.end());
    OperationLog log;
    log.seed = spec.seed;
    for (std::uint32_t i = 0; i < spec.num_ops; ++i) {
        VertexId end = candidates[end_dist(rng)];
        std::vector<VertexId> chain = tree.ancestor_chain(g, end);
        std::uniform_int_distribution<std::size_t> level_dist(0, chain.size() - 1);
        VertexId start = chain[level_dist(rng)];
        log.records.push_back({i, OpKind::FsBfs, start, end});
    }
    return log;
}

OperationLog gen_gis_ops(const Graph& g, const WorkloadSpec& spec) {
    if (spec.pattern != OpKind::GisAstarShort && spec.pattern != OpKind::GisAstarLong)
        throw std::invalid_argument("gis workload needs a GIS pattern");
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (!g.has_property(v, "longitude") || !g.has_property(v, "latitude"))
            throw std::invalid_argument("gis workload needs coordinates on every vertex");

    // Start weight from distance to the nearest dense region. City centers are
    // recovered as the coordinate means of high-degree neighborhoods; we use
    // the top-degree vertices as anchors.
    std::vector<std::pair<double, double>> anchors;
    {
        std::vector<VertexId> order(g.num_vertices());
        for (VertexId v = 0; v < g.num_vertices(); ++v) order[v] = v;
        std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
            auto da = g.degree_count(a, Direction::Both);
            auto db = g.degree_count(b, Direction::Both);
            return da != db ? da > db : a < b;
        });
        std::size_t take = std::max<std::size_t>(1, g.num_vertices() / 100);
        for (std::size_t i = 0; i < take && i < order.size(); ++i) {
            VertexId v = order[i];
            double lon = g.property(v, "longitude");
            double lat = g.property(v, "latitude");
            bool merged = false;
            for (auto& [alon, alat] : anchors)
                if (std::hypot(lon - alon, lat - alat) < 1.0) merged = true;
            if (!merged) anchors.emplace_back(lon, lat);
        }
    }
    std::vector<double> weights(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        double lon = g.property(v, "longitude");
        double lat = g.property(v, "latitude");
        double nearest = std::numeric_limits<double>::infinity();
        for (auto [alon, alat] : anchors)
            nearest = std::min(nearest, std::hypot(lon - alon, lat - alat));
        weights[v] = spec.gis_literal_distance_sampling ? nearest : 1.0 / (1.0 + nearest);
    }

    UndirectedView uv(g);
    std::mt19937_64 rng(spec.seed);
    std::discrete_distribution<std::size_t> point_dist(weights.begin(), weights.end());
    std::exponential_distribution<double> walk_dist(1.0 / spec.gis_walk_mean);

    OperationLog log;
    log.seed = spec.seed;
    for (std::uint32_t i = 0; i < spec.num_ops; ++i) {
        auto start = static_cast<VertexId>(point_dist(rng));
        VertexId end;
        if (spec.pattern == OpKind::GisAstarLong) {
            end = static_cast<VertexId>(point_dist(rng));
        } else {
            auto len = static_cast<std::size_t>(std::llround(walk_dist(rng)));
            VertexId cur = start;
            for (std::size_t s = 0; s < len; ++s) {
                const auto& incs = uv.incidences(cur);
                if (incs.empty()) break;
                std::uniform_int_distribution<std::size_t> step(0, incs.size() - 1);
                cur = incs[step(rng)].neighbor;
            }
            end = cur;
        }
        log.records.push_back({i, spec.pattern, start, end});
    }
    return log;
}

OperationLog gen_social_ops(const Graph& g, const WorkloadSpec& spec) {
    std::vector<double> weights(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        weights[v] = static_cast<double>(g.degree_count(v, Direction::Out));
    bool any = std::any_of(weights.begin(), weights.end(), [](double w) { return w > 0.0; });
    if (!any) throw std::invalid_argument("social workload needs out-edges");

    std::mt19937_64 rng(spec.seed);
    std::discrete_distribution<std::size_t> start_dist(weights.begin(), weights.end());
    OperationLog log;
    log.seed = spec.seed;
    for (std::uint32_t i = 0; i < spec.num_ops; ++i)
        log.records.push_back({i, OpKind::SocialFoaf, static_cast<VertexId>(start_dist(rng)), 0});
    return log;
}

OperationLog generate_operations(const Graph& g, const WorkloadSpec& spec) {
    switch (spec.pattern) {
        case OpKind::FsBfs: return gen_fs_ops(g, spec);
        case OpKind::GisAstarShort:
        case OpKind::GisAstarLong: return gen_gis_ops(g, spec);
        case OpKind::SocialFoaf: return gen_social_ops(g, spec);
    }
    throw std::invalid_argument("unknown workload pattern");
}

// --- Execution ---------------------------------------------------------------------------

OpTraffic exec_fs_op(Emulator& em, const OperationRecord& op) {
    const Graph& g = em.graph();
    const PartitionMap& p = em.partition_map();
    Cursor cur = em.begin_operation();
    em.lookup_vertex(cur, op.start);
    if (op.start != op.end) {
        std::deque<VertexId> queue{op.start};
        std::vector<bool> seen(g.num_vertices(), false);
        seen[op.start] = true;
        bool found = false;
        while (!queue.empty() && !found) {
            VertexId v = queue.front();
            queue.pop_front();
            cur.partition = p[v];
            for (EdgeId e : g.out_edges(v)) {
                VertexId u = g.edge(e).end;
                VertexKind uk = g.vertex(u).kind;
                if (uk != VertexKind::File && uk != VertexKind::Folder) continue;
                em.get_vertex_id(cur, v);
                em.get_edge(cur, e);
                em.get_end_vertex(cur, e);
                cur.partition = p[v];
                if (u == op.end) {
                    found = true;
                    break;
                }
                if (!seen[u] && uk == VertexKind::Folder) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if (!found) throw std::runtime_error("fs operation end vertex unreachable from start");
    }
    return {cur.op_local, cur.op_global};
}

double gis_heuristic_factor(const Graph& g) {
    double factor = std::numeric_limits<double>::infinity();
    for (const Edge& e : g.edges()) {
        double dist = std::hypot(g.property(e.start, "longitude") - g.property(e.end, "longitude"),
                                 g.property(e.start, "latitude") - g.property(e.end, "latitude"));
        if (dist > 0.0) factor = std::min(factor, e.weight / dist);
    }
    return std::isfinite(factor) ? factor : 0.0;
}

OpTraffic exec_gis_op(Emulator& em, const OperationRecord& op, double heuristic_factor) {
    const Graph& g = em.graph();
    const PartitionMap& p = em.partition_map();
    Cursor cur = em.begin_operation();
    em.lookup_vertex(cur, op.start);
    if (op.start == op.end) return {cur.op_local, cur.op_global};

    double end_lon = g.property(op.end, "longitude");
    double end_lat = g.property(op.end, "latitude");
    auto heuristic = [&](VertexId v) {
        return heuristic_factor * std::hypot(g.property(v, "longitude") - end_lon,
                                             g.property(v, "latitude") - end_lat);
    };

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.num_vertices(), kInf);
    std::vector<bool> closed(g.num_vertices(), false);
    using Entry = std::pair<double, VertexId>;  // (f-score, vertex)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    dist[op.start] = 0.0;
    open.push({heuristic(op.start), op.start});
    bool found = false;

    auto expand_edge = [&](VertexId v, EdgeId e) {
        const Edge& ed = g.edge(e);
        VertexId u = ed.start == v ? ed.end : ed.start;
        if (closed[u]) return;
        em.get_vertex_id(cur, v);
        em.get_vertex_id(cur, op.end);
        em.get_vertex_property(cur, u, "latitude");
        em.get_vertex_property(cur, u, "longitude");
        em.get_edge(cur, e);
        em.get_edge_id(cur, e);
        double w = em.get_edge_property(cur, e, "weight");
        em.get_start_vertex(cur, e);
        em.get_end_vertex(cur, e);
        cur.partition = p[v];
        double nd = dist[v] + w;
        if (nd < dist[u]) {
            dist[u] = nd;
            open.push({nd + heuristic(u), u});
        }
    };

    while (!open.empty()) {
        auto [f, v] = open.top();
        open.pop();
        if (closed[v]) continue;
        closed[v] = true;
        if (v == op.end) {
            found = true;
            break;
        }
        cur.partition = p[v];
        for (EdgeId e : g.out_edges(v)) expand_edge(v, e);
        for (EdgeId e : g.in_edges(v)) expand_edge(v, e);
    }
    if (!found) throw std::runtime_error("gis operation end vertex unreachable from start");
    return {cur.op_local, cur.op_global};
}

OpTraffic exec_social_op(Emulator& em, const OperationRecord& op) {
    const Graph& g = em.graph();
    const PartitionMap& p = em.partition_map();
    Cursor cur = em.begin_operation();
    em.lookup_vertex(cur, op.start);
    std::vector<VertexId> frontier{op.start};
    std::vector<bool> seen(g.num_vertices(), false);
    seen[op.start] = true;
    for (int hop = 0; hop < 2; ++hop) {
        std::vector<VertexId> next;
        for (VertexId v : frontier) {
            cur.partition = p[v];
            for (EdgeId e : g.out_edges(v)) {
                em.get_vertex_id(cur, v);
                em.get_edge(cur, e);
                VertexId u = em.get_end_vertex(cur, e).id;
                cur.partition = p[v];
                if (!seen[u]) {
                    seen[u] = true;
                    next.push_back(u);
                }
            }
        }
        frontier = std::move(next);
    }
    return {cur.op_local, cur.op_global};
}

OpTraffic exec_operation(Emulator& em, const OperationRecord& op, double heuristic_factor) {
    switch (op.kind) {
        case OpKind::FsBfs: return exec_fs_op(em, op);
        case OpKind::GisAstarShort:
        case OpKind::GisAstarLong: return exec_gis_op(em, op, heuristic_factor);
        case OpKind::SocialFoaf: return exec_social_op(em, op);
    }
    throw std::invalid_argument("unknown operation kind");
}

std::vector<OpTrafficSample> replay_log(Emulator& em, const OperationLog& log) {
    bool needs_gis = std::any_of(log.records.begin(), log.records.end(), [](const auto& r) {
        return r.kind == OpKind::GisAstarShort || r.kind == OpKind::GisAstarLong;
    });
    double factor = needs_gis ? gis_heuristic_factor(em.graph()) : 0.0;
    std::vector<OpTrafficSample> samples;
    samples.reserve(log.records.size());
    for (const OperationRecord& r : log.records) {
        OpTraffic t = exec_operation(em, r, factor);
        samples.push_back({r.seq, t.local, t.global});
    }
    return samples;
}

// --- Dynamism -------------------------------------------------------------------------------

DynamismLog gen_dynamism(Emulator& em, const DynamismSpec& spec, const OperationLog* workload) {
    if (spec.level < 0.0) throw std::invalid_argument("dynamism level must be >= 0");
    if (spec.policy == InsertPolicy::LeastTraffic && (!workload || !spec.interleave_reads))
        throw std::invalid_argument("least_traffic policy requires interleaved read workload");

    const Graph& g = em.graph();
    std::uint32_t k = em.k();
    auto units = static_cast<std::size_t>(spec.level * static_cast<double>(g.num_vertices()));
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<VertexId> vertex_dist(0,
                                                        static_cast<VertexId>(g.num_vertices() - 1));
    std::uniform_int_distribution<std::uint32_t> part_dist(0, k - 1);

    auto pick_target = [&]() -> PartitionId {
        switch (spec.policy) {
            case InsertPolicy::Random: return part_dist(rng);
            case InsertPolicy::FewestVertices: {
                PartitionId best = 0;
                for (PartitionId i = 1; i < k; ++i)
                    if (em.instance_info(i).num_vertices < em.instance_info(best).num_vertices)
                        best = i;
                return best;
            }
            case InsertPolicy::LeastTraffic: {
                PartitionId best = 0;
                auto traffic = [&](PartitionId i) {
                    return em.instance_info(i).local_traffic + em.instance_info(i).global_traffic;
                };
                for (PartitionId i = 1; i < k; ++i)
                    if (traffic(i) < traffic(best)) best = i;
                return best;
            }
        }
        return 0;
    };

    DynamismLog log;
    log.seed = spec.seed;
    std::uint32_t batches = spec.interleave_reads ? std::max(spec.interleave_batches, 1u) : 1;
    double factor = 0.0;
    if (spec.interleave_reads && workload) {
        bool needs_gis = std::any_of(workload->records.begin(), workload->records.end(),
                                     [](const auto& r) {
                                         return r.kind == OpKind::GisAstarShort ||
                                                r.kind == OpKind::GisAstarLong;
                                     });
        if (needs_gis) factor = gis_heuristic_factor(g);
    }

    std::uint64_t seq = 0;
    for (std::uint32_t b = 0; b < batches; ++b) {
        if (spec.interleave_reads && workload) {
            std::size_t n = workload->records.size();
            std::size_t lo = n * b / batches;
            std::size_t hi = n * (b + 1) / batches;
            for (std::size_t i = lo; i < hi; ++i)
                exec_operation(em, workload->records[i], factor);
        }
        std::size_t lo = units * b / batches;
        std::size_t hi = units * (b + 1) / batches;
        for (std::size_t i = lo; i < hi; ++i) {
            VertexId v = vertex_dist(rng);
            PartitionId target = pick_target();
            em.move_vertex(v, target);
            log.records.push_back({seq++, v, target});
        }
    }
    return log;
}

void apply_dynamism(Emulator& em, const DynamismLog& log) {
    for (const DynamismRecord& r : log.records) em.move_vertex(r.vertex, r.target);
}

}  // namespace partsim
