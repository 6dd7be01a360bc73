// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "partsim/graph.hpp"

using namespace partsim;

namespace {

Graph unit_triangle() {
    Graph g;
    for (int i = 0; i < 3; ++i) g.add_vertex();
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    return g;
}

}  // namespace

TEST_CASE("degree sums incident edge weights per view") {
    Graph g;
    g.add_vertex();
    CHECK(g.degree(0, Direction::Both) == 0.0);  // isolated vertex, empty sum

    Graph tri = unit_triangle();
    for (VertexId v = 0; v < 3; ++v) CHECK(tri.degree(v, Direction::Both) == doctest::Approx(2.0));

    Graph star;  // center 0 with three outward 0.5-weight spokes
    for (int i = 0; i < 4; ++i) star.add_vertex();
    for (VertexId leaf = 1; leaf <= 3; ++leaf) star.add_edge(0, leaf, 0.5);
    CHECK(star.degree(0, Direction::Out) == doctest::Approx(1.5));
    CHECK(star.degree(0, Direction::In) == 0.0);
    CHECK(star.degree(1, Direction::Both) == doctest::Approx(0.5));

    CHECK_THROWS_AS(star.degree(99), std::out_of_range);
}

TEST_CASE("adjacency indices stay consistent with the edge collection") {
    Graph g;
    for (int i = 0; i < 5; ++i) g.add_vertex();
    g.add_edge(0, 1, 0.3);
    g.add_edge(1, 2, 0.7);
    g.add_edge(2, 0, 1.0);
    g.add_edge(3, 3, 0.5);  // self-loop

    std::size_t out_total = 0, in_total = 0;
    double out_w = 0.0, in_w = 0.0, edge_w = 0.0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        out_total += g.out_edges(v).size();
        in_total += g.in_edges(v).size();
        out_w += g.degree(v, Direction::Out);
        in_w += g.degree(v, Direction::In);
        for (EdgeId e : g.out_edges(v)) CHECK(g.edge(e).start == v);
        for (EdgeId e : g.in_edges(v)) CHECK(g.edge(e).end == v);
    }
    for (const Edge& e : g.edges()) edge_w += e.weight;
    CHECK(out_total == g.num_edges());
    CHECK(in_total == g.num_edges());
    CHECK(out_w == doctest::Approx(edge_w));
    CHECK(in_w == doctest::Approx(edge_w));
}

TEST_CASE("partition map round-trips assignments and validates ranges") {
    PartitionMap p(4, 3);
    p.assign(0, 2);
    p.assign(3, 1);
    CHECK(p[0] == 2);
    CHECK(p[1] == 0);
    CHECK(p[3] == 1);
    CHECK(p.partition_sizes() == std::vector<std::size_t>{2, 1, 1});
    CHECK_THROWS_AS(p.assign(0, 3), std::out_of_range);
    CHECK_THROWS_AS(PartitionMap(4, 0), std::invalid_argument);
}

TEST_CASE("is_inter_edge classifies crossing edges") {
    Graph g;  // path a-b-c
    for (int i = 0; i < 3; ++i) g.add_vertex();
    EdgeId ab = g.add_edge(0, 1);
    EdgeId bc = g.add_edge(1, 2);

    PartitionMap k1(3, 1);
    CHECK_FALSE(is_inter_edge(g, k1, ab));
    CHECK_FALSE(is_inter_edge(g, k1, bc));

    PartitionMap split(3, 2);  // {a,b} | {c}
    split.assign(2, 1);
    CHECK_FALSE(is_inter_edge(g, split, ab));
    CHECK(is_inter_edge(g, split, bc));

    // relabeling partition ids must not change the classification
    PartitionMap relabeled(3, 2, 1);
    relabeled.assign(2, 0);
    CHECK(is_inter_edge(g, relabeled, ab) == is_inter_edge(g, split, ab));
    CHECK(is_inter_edge(g, relabeled, bc) == is_inter_edge(g, split, bc));
}

TEST_CASE("undirected view merges parallel directed edges per unordered pair") {
    Graph g;
    g.add_vertex();
    g.add_vertex();
    g.add_edge(0, 1, 0.4);
    g.add_edge(1, 0, 0.6);
    UndirectedView uv(g);
    REQUIRE(uv.incidences(0).size() == 1);
    CHECK(uv.incidences(0)[0].neighbor == 1);
    CHECK(uv.incidences(0)[0].weight == doctest::Approx(1.0));
    CHECK(uv.num_pairs() == 1);
    CHECK(uv.total_weight() == doctest::Approx(1.0));
}

TEST_CASE("undirected view clamps merged pair weight to 1.0") {
    Graph g;
    g.add_vertex();
    g.add_vertex();
    g.add_edge(0, 1, 0.7);
    g.add_edge(1, 0, 0.8);
    UndirectedView uv(g);
    CHECK(uv.incidences(1)[0].weight == doctest::Approx(1.0));
}

TEST_CASE("undirected view symmetrizes a DAG path") {
    Graph g;
    for (int i = 0; i < 3; ++i) g.add_vertex();
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    UndirectedView uv(g);
    CHECK(uv.degree(0) == doctest::Approx(1.0));
    CHECK(uv.degree(1) == doctest::Approx(2.0));
    CHECK(uv.degree(2) == doctest::Approx(1.0));
    CHECK(uv.degree_count(1) == 2);

    std::size_t pairs = 0;
    uv.for_each_pair([&](VertexId u, VertexId v, double) {
        CHECK(u <= v);
        ++pairs;
    });
    CHECK(pairs == uv.num_pairs());
}

TEST_CASE("undirected view of an empty graph is empty") {
    Graph g;
    UndirectedView uv(g);
    CHECK(uv.num_vertices() == 0);
    CHECK(uv.num_pairs() == 0);
    CHECK(uv.total_weight() == 0.0);
}

TEST_CASE("vertex properties are reachable through the graph") {
    Graph g;
    g.add_vertex(VertexKind::GisPoint, {{"latitude", 45.0}, {"longitude", 25.0}});
    CHECK(g.has_property(0, "latitude"));
    CHECK(g.property(0, "longitude") == doctest::Approx(25.0));
    CHECK_FALSE(g.has_property(0, "altitude"));
    CHECK_THROWS(g.property(0, "altitude"));
}

TEST_CASE("vertex kind names round-trip") {
    for (VertexKind k : {VertexKind::Plain, VertexKind::File, VertexKind::Folder, VertexKind::User,
                         VertexKind::Org, VertexKind::Event, VertexKind::GisPoint,
                         VertexKind::SocialUser})
        CHECK(vertex_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(vertex_kind_from_string("nope"), std::invalid_argument);
}
