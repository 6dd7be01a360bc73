// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "partsim/datasets.hpp"
#include "partsim/workloads.hpp"

using namespace partsim;

namespace {

// user -> root folder -> {left, right} -> four leaf folders
struct HandTree {
    Graph g;
    VertexId user, root, left, right;
    VertexId leaves[4];
    HandTree() {
        user = g.add_vertex(VertexKind::User);
        root = g.add_vertex(VertexKind::Folder);
        g.add_edge(user, root, 1.0, "OWNS");
        left = g.add_vertex(VertexKind::Folder);
        right = g.add_vertex(VertexKind::Folder);
        g.add_edge(root, left, 1.0, "CONTAINS");
        g.add_edge(root, right, 1.0, "CONTAINS");
        for (int i = 0; i < 4; ++i) {
            leaves[i] = g.add_vertex(VertexKind::Folder);
            g.add_edge(i < 2 ? left : right, leaves[i], 1.0, "CONTAINS");
        }
    }
};

// three road points on a line: lon 0, 1, 2; two edges of weight 0.5
Graph hand_road() {
    Graph g;
    for (double lon : {0.0, 1.0, 2.0})
        g.add_vertex(VertexKind::GisPoint, {{"longitude", lon}, {"latitude", 0.0}});
    g.add_edge(0, 1, 0.5);
    g.add_edge(1, 2, 0.5);
    return g;
}

// shortest-path oracle on the undirected view
std::vector<double> dijkstra(const UndirectedView& uv, VertexId src) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(uv.num_vertices(), kInf);
    using Entry = std::pair<double, VertexId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    dist[src] = 0.0;
    open.push({0.0, src});
    while (!open.empty()) {
        auto [d, v] = open.top();
        open.pop();
        if (d > dist[v]) continue;
        for (const auto& inc : uv.incidences(v))
            if (d + inc.weight < dist[inc.neighbor]) {
                dist[inc.neighbor] = d + inc.weight;
                open.push({dist[inc.neighbor], inc.neighbor});
            }
    }
    return dist;
}

}  // namespace

TEST_CASE("fs tree index recovers parents, levels, and ancestor chains") {
    HandTree t;
    FsTreeIndex idx(t.g);
    CHECK(idx.parent[t.root] == t.user);
    CHECK(idx.parent[t.left] == t.root);
    CHECK(idx.parent[t.leaves[3]] == t.right);
    CHECK(idx.level[t.root] == 0);
    CHECK(idx.level[t.left] == 1);
    CHECK(idx.level[t.leaves[0]] == 2);

    std::vector<VertexId> chain = idx.ancestor_chain(t.g, t.leaves[1]);
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == t.leaves[1]);
    CHECK(chain[1] == t.left);
    CHECK(chain[2] == t.root);
}

TEST_CASE("fs operation starts lie on the end vertex's ancestor chain") {
    HandTree t;
    WorkloadSpec spec;
    spec.pattern = OpKind::FsBfs;
    spec.num_ops = 200;
    FsTreeIndex idx(t.g);
    OperationLog log = gen_fs_ops(t.g, spec);
    REQUIRE(log.records.size() == 200);
    for (const OperationRecord& r : log.records) {
        CHECK(r.kind == OpKind::FsBfs);
        std::vector<VertexId> chain = idx.ancestor_chain(t.g, r.end);
        CHECK(std::find(chain.begin(), chain.end(), r.start) != chain.end());
    }
    CHECK(gen_fs_ops(t.g, spec) == log);  // seeded determinism
    spec.seed = 2;
    CHECK_FALSE(gen_fs_ops(t.g, spec) == log);

    Graph plain;
    plain.add_vertex();
    CHECK_THROWS_AS(gen_fs_ops(plain, spec), std::invalid_argument);
}

TEST_CASE("fs traversal charges three actions per traversed edge") {
    HandTree t;

    // start == end: only the index lookup
    Emulator em1(t.g, PartitionMap(t.g.num_vertices(), 1));
    OpTraffic same = exec_fs_op(em1, {0, OpKind::FsBfs, t.root, t.root});
    CHECK(same.local == 1);
    CHECK(same.global == 0);

    // root -> first left leaf traverses root->left, root->right, left->leaf0
    OpTraffic walk = exec_fs_op(em1, {1, OpKind::FsBfs, t.root, t.leaves[0]});
    CHECK(walk.local == 1 + 3 * 3);
    CHECK(walk.global == 0);

    // same walk with the two left leaves split off: only left->leaf0 crosses
    PartitionMap split(t.g.num_vertices(), 2);
    split.assign(t.leaves[0], 1);
    split.assign(t.leaves[1], 1);
    Emulator em2(t.g, split);
    OpTraffic crossing = exec_fs_op(em2, {2, OpKind::FsBfs, t.root, t.leaves[0]});
    CHECK(crossing.global == 1);
    CHECK(crossing.local == 1 + 2 * 3 + 2);  // two local edges, crossing edge's id+endpoint
}

TEST_CASE("social operations start at vertices with followees") {
    Graph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(VertexKind::SocialUser);
    g.add_edge(1, 2, 1.0, "FOLLOWS");
    g.add_edge(2, 3, 1.0, "FOLLOWS");

    WorkloadSpec spec;
    spec.pattern = OpKind::SocialFoaf;
    spec.num_ops = 100;
    OperationLog log = gen_social_ops(g, spec);
    for (const OperationRecord& r : log.records) {
        CHECK(r.kind == OpKind::SocialFoaf);
        CHECK(r.end == 0);
        CHECK(g.out_edges(r.start).size() > 0);
    }
    CHECK(gen_social_ops(g, spec) == log);

    Graph edgeless;
    edgeless.add_vertex();
    CHECK_THROWS_AS(gen_social_ops(edgeless, spec), std::invalid_argument);
}

TEST_CASE("friend-of-friend expansion charges three actions per out-edge") {
    // fan: 1 -> 2 -> {3, 4}; vertex 0 has no followees
    Graph g;
    for (int i = 0; i < 5; ++i) g.add_vertex(VertexKind::SocialUser);
    g.add_edge(1, 2, 1.0, "FOLLOWS");
    g.add_edge(2, 3, 1.0, "FOLLOWS");
    g.add_edge(2, 4, 1.0, "FOLLOWS");

    Emulator em(g, PartitionMap(g.num_vertices(), 1));
    OpTraffic lonely = exec_social_op(em, {0, OpKind::SocialFoaf, 0, 0});
    CHECK(lonely.local == 1);
    CHECK(lonely.global == 0);

    // hop 1 visits edge 1->2, hop 2 visits 2->3 and 2->4
    OpTraffic fan = exec_social_op(em, {1, OpKind::SocialFoaf, 1, 0});
    CHECK(fan.local == 1 + 3 * 3);
    CHECK(fan.global == 0);

    // second-hop targets on another partition: the two 2->{3,4} edges cross
    PartitionMap split(g.num_vertices(), 2);
    split.assign(3, 1);
    split.assign(4, 1);
    Emulator em2(g, split);
    OpTraffic crossing = exec_social_op(em2, {2, OpKind::SocialFoaf, 1, 0});
    CHECK(crossing.global == 2);
    CHECK(crossing.local == 1 + 3 + 2 * 2);
}

TEST_CASE("route-search heuristic factor is the tightest admissible scale") {
    Graph g = hand_road();
    CHECK(gis_heuristic_factor(g) == doctest::Approx(0.5));

    // a slacker edge does not loosen the factor
    g.add_edge(0, 2, 1.0);  // distance 2, weight 1 -> ratio 0.5 again
    CHECK(gis_heuristic_factor(g) == doctest::Approx(0.5));
    VertexId v = g.add_vertex(VertexKind::GisPoint, {{"longitude", 0.0}, {"latitude", 0.1}});
    g.add_edge(0, v, 0.02);  // ratio 0.2 now binds
    CHECK(gis_heuristic_factor(g) == doctest::Approx(0.2));

    CHECK(gis_heuristic_factor(Graph{}) == 0.0);
}

TEST_CASE("heuristic factor stays admissible against a shortest-path oracle") {
    GisGenSpec gspec;
    gspec.seed = 2;
    gspec.target_vertices = 300;
    Graph g = generate_gis(gspec);
    UndirectedView uv(g);
    double factor = gis_heuristic_factor(g);
    CHECK(factor > 0.0);
    for (VertexId src : {VertexId{0}, VertexId{37}, VertexId{150}}) {
        std::vector<double> dist = dijkstra(uv, src);
        double slon = g.property(src, "longitude"), slat = g.property(src, "latitude");
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (!std::isfinite(dist[v])) continue;
            double straight = std::hypot(g.property(v, "longitude") - slon,
                                         g.property(v, "latitude") - slat);
            CHECK(factor * straight <= dist[v] + 1e-12);
        }
    }
}

TEST_CASE("route search charges nine actions per relaxed edge") {
    Graph g = hand_road();
    Emulator em(g, PartitionMap(3, 1));

    OpTraffic same = exec_gis_op(em, {0, OpKind::GisAstarShort, 1, 1}, 0.5);
    CHECK(same.local == 1);
    CHECK(same.global == 0);

    // 0 -> 2 relaxes 0->1 while expanding 0, then 1->2 while expanding 1
    OpTraffic path = exec_gis_op(em, {1, OpKind::GisAstarShort, 0, 2}, 0.5);
    CHECK(path.local == 1 + 2 * 9);
    CHECK(path.global == 0);

    // middle vertex split off: both path edges cross, 8 of 9 actions stay local
    PartitionMap split(3, 2);
    split.assign(1, 1);
    Emulator em2(g, split);
    OpTraffic crossing = exec_gis_op(em2, {2, OpKind::GisAstarShort, 0, 2}, 0.5);
    CHECK(crossing.global == 2);
    CHECK(crossing.local == 1 + 2 * 8);
}

TEST_CASE("goal-directed search expands no more than blind search") {
    GisGenSpec gspec;
    gspec.seed = 3;
    gspec.target_vertices = 400;
    Graph g = generate_gis(gspec);
    double factor = gis_heuristic_factor(g);
    Emulator em(g, PartitionMap(g.num_vertices(), 1));

    WorkloadSpec wspec;
    wspec.pattern = OpKind::GisAstarLong;
    wspec.num_ops = 10;
    OperationLog log = gen_gis_ops(g, wspec);
    for (const OperationRecord& r : log.records) {
        OpTraffic guided = exec_gis_op(em, r, factor);
        OpTraffic blind = exec_gis_op(em, r, 0.0);
        CHECK(guided.local + guided.global <= blind.local + blind.global);
    }
}

TEST_CASE("route workload generation validates inputs and is deterministic") {
    GisGenSpec gspec;
    gspec.seed = 1;
    gspec.target_vertices = 300;
    Graph g = generate_gis(gspec);

    WorkloadSpec spec;
    spec.pattern = OpKind::GisAstarLong;
    spec.num_ops = 50;
    OperationLog log = gen_gis_ops(g, spec);
    REQUIRE(log.records.size() == 50);
    for (const OperationRecord& r : log.records) CHECK(r.kind == OpKind::GisAstarLong);
    CHECK(gen_gis_ops(g, spec) == log);

    spec.pattern = OpKind::GisAstarShort;
    OperationLog shorts = gen_gis_ops(g, spec);
    for (const OperationRecord& r : shorts.records) CHECK(r.kind == OpKind::GisAstarShort);

    spec.pattern = OpKind::FsBfs;
    CHECK_THROWS_AS(gen_gis_ops(g, spec), std::invalid_argument);

    Graph bare;
    bare.add_vertex();
    spec.pattern = OpKind::GisAstarLong;
    CHECK_THROWS_AS(gen_gis_ops(bare, spec), std::invalid_argument);
}

TEST_CASE("dispatching generator and executor agree with the per-pattern entry points") {
    HandTree t;
    WorkloadSpec spec;
    spec.pattern = OpKind::FsBfs;
    spec.num_ops = 20;
    CHECK(generate_operations(t.g, spec) == gen_fs_ops(t.g, spec));

    Emulator em(t.g, PartitionMap(t.g.num_vertices(), 1));
    OperationRecord op{0, OpKind::FsBfs, t.root, t.leaves[0]};
    OpTraffic a = exec_operation(em, op);
    OpTraffic b = exec_fs_op(em, op);
    CHECK(a.local == b.local);
    CHECK(a.global == b.global);

    std::vector<OpTrafficSample> samples = replay_log(em, generate_operations(t.g, spec));
    REQUIRE(samples.size() == 20);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(samples[i].seq == i);
        CHECK(samples[i].local >= 1);
    }
}

TEST_CASE("dynamism generation honors level, policy, and seeding") {
    Graph g;
    for (int i = 0; i < 100; ++i) g.add_vertex();
    PartitionMap p(100, 2);

    DynamismSpec spec;
    spec.level = 0.0;
    {
        Emulator em(g, p);
        CHECK(gen_dynamism(em, spec).records.empty());
    }

    spec.level = 0.25;
    DynamismLog log;
    {
        Emulator em(g, p);
        log = gen_dynamism(em, spec);
        CHECK(log.records.size() == 25);  // one move per 4 vertices
        for (std::size_t i = 0; i < log.records.size(); ++i) {
            CHECK(log.records[i].seq == i);
            CHECK(log.records[i].vertex < 100);
            CHECK(log.records[i].target < 2);
        }
        // the generator applied its own moves to the handle
        CHECK(em.partition_map()[log.records.back().vertex] == log.records.back().target);
    }
    {
        Emulator em(g, p);
        CHECK(gen_dynamism(em, spec) == log);  // seeded determinism
    }

    spec.level = -0.1;
    Emulator em(g, p);
    CHECK_THROWS_AS(gen_dynamism(em, spec), std::invalid_argument);
}

TEST_CASE("fewest-vertices policy targets the emptiest instance") {
    Graph g;
    for (int i = 0; i < 4; ++i) g.add_vertex();
    PartitionMap p(4, 2);
    p.assign(3, 1);  // sizes {3, 1}
    Emulator em(g, p);

    DynamismSpec spec;
    spec.policy = InsertPolicy::FewestVertices;
    spec.level = 0.25;  // exactly one move
    DynamismLog log = gen_dynamism(em, spec);
    REQUIRE(log.records.size() == 1);
    CHECK(log.records[0].target == 1);
}

TEST_CASE("traffic-aware policy requires an interleaved read workload") {
    HandTree t;
    Emulator em(t.g, PartitionMap(t.g.num_vertices(), 2));
    DynamismSpec spec;
    spec.policy = InsertPolicy::LeastTraffic;
    spec.level = 0.5;
    CHECK_THROWS_AS(gen_dynamism(em, spec), std::invalid_argument);
    spec.interleave_reads = true;
    CHECK_THROWS_AS(gen_dynamism(em, spec, nullptr), std::invalid_argument);

    WorkloadSpec wspec;
    wspec.pattern = OpKind::FsBfs;
    wspec.num_ops = 10;
    OperationLog reads = gen_fs_ops(t.g, wspec);
    DynamismLog log = gen_dynamism(em, spec, &reads);
    CHECK(log.records.size() == t.g.num_vertices() / 2);
}

TEST_CASE("replaying a recorded dynamism log reproduces the placement") {
    Graph g;
    for (int i = 0; i < 60; ++i) g.add_vertex();
    PartitionMap p(60, 3);
    for (VertexId v = 0; v < 60; ++v) p.assign(v, v % 3);

    DynamismSpec spec;
    spec.level = 0.2;
    spec.seed = 11;
    Emulator live(g, p);
    DynamismLog log = gen_dynamism(live, spec);

    Emulator replayed(g, p);
    apply_dynamism(replayed, log);
    CHECK(replayed.partition_map() == live.partition_map());
    CHECK(replayed.instance_info(0).num_vertices == live.instance_info(0).num_vertices);
}

TEST_CASE("insert policy names round-trip") {
    for (InsertPolicy p :
         {InsertPolicy::Random, InsertPolicy::FewestVertices, InsertPolicy::LeastTraffic})
        CHECK(insert_policy_from_string(to_string(p)) == p);
    CHECK_THROWS_AS(insert_policy_from_string("greedy"), std::invalid_argument);
}
