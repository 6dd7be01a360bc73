// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "partsim/baselines.hpp"
#include "partsim/metrics.hpp"

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

Graph path3() {  // a-b-c, unit weights
    Graph g;
    for (int i = 0; i < 3; ++i) g.add_vertex();
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

PartitionMap split_ab_c() {  // {a,b} | {c}
    PartitionMap p(3, 2);
    p.assign(2, 1);
    return p;
}

Graph two_triangles_bridge() {  // vertices 0-2 and 3-5, bridge 2-3
    Graph g;
    for (int i = 0; i < 6; ++i) g.add_vertex();
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(3, 5);
    g.add_edge(2, 3);
    return g;
}

PartitionMap natural_split() {
    PartitionMap p(6, 2);
    for (VertexId v = 3; v < 6; ++v) p.assign(v, 1);
    return p;
}

Graph k4() {
    Graph g;
    for (int i = 0; i < 4; ++i) g.add_vertex();
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("volume sums member degrees on the undirected view") {
    Graph tri = unit_triangle();
    UndirectedView uv(tri);
    PartitionMap whole(3, 1);
    CHECK(volume(uv, whole, 0) == doctest::Approx(6.0));

    Graph p3 = path3();
    UndirectedView uvp(p3);
    PartitionMap p(3, 2);
    p.assign(1, 1);  // pi_1 = {b}
    CHECK(volume(uvp, p, 1) == doctest::Approx(2.0));
    CHECK(volume(uvp, PartitionMap(3, 2, 0), 1) == 0.0);  // empty partition
}

TEST_CASE("intra_weight counts edges with both endpoints inside") {
    Graph tri = unit_triangle();
    CHECK(intra_weight(UndirectedView(tri), PartitionMap(3, 1), 0) == doctest::Approx(3.0));

    Graph p3 = path3();
    UndirectedView uv(p3);
    PartitionMap p = split_ab_c();
    CHECK(intra_weight(uv, p, 0) == doctest::Approx(1.0));
    CHECK(intra_weight(uv, p, 1) == 0.0);  // singleton, no self-loop

    PartitionMap singleton(3, 3);
    singleton.assign(1, 1);
    singleton.assign(2, 2);
    CHECK(intra_weight(uv, singleton, 0) == 0.0);
}

TEST_CASE("partition_degree counts edges leaving a partition") {
    Graph p3 = path3();
    UndirectedView uv(p3);
    CHECK(partition_degree(uv, PartitionMap(3, 1), 0) == 0.0);  // whole graph
    CHECK(partition_degree(uv, split_ab_c(), 0) == doctest::Approx(1.0));

    Graph g = k4();
    UndirectedView uvk(g);
    PartitionMap half(4, 2);
    half.assign(2, 1);
    half.assign(3, 1);
    CHECK(partition_degree(uvk, half, 0) == doctest::Approx(4.0));
    CHECK(partition_degree(uvk, half, 1) == doctest::Approx(4.0));
}

TEST_CASE("edge_cut is single-counted crossing weight plus fraction") {
    Graph g = k4();
    UndirectedView uv(g);
    CHECK(edge_cut(uv, PartitionMap(4, 1)).weight == 0.0);
    CHECK(edge_cut(uv, PartitionMap(4, 1)).fraction == 0.0);

    PartitionMap half(4, 2);
    half.assign(2, 1);
    half.assign(3, 1);
    EdgeCut ec = edge_cut(uv, half);
    CHECK(ec.weight == doctest::Approx(4.0));
    CHECK(ec.fraction == doctest::Approx(4.0 / 6.0));

    // single-counted cut equals half the sum of partition degrees
    double pd = partition_degree(uv, half, 0) + partition_degree(uv, half, 1);
    CHECK(ec.weight == doctest::Approx(pd / 2.0));
}

TEST_CASE("uniform random assignment cuts about 1 - 1/k of the weight") {
    std::mt19937_64 rng(11);
    Graph g;
    for (int i = 0; i < 4000; ++i) g.add_vertex();
    std::uniform_int_distribution<VertexId> pick(0, 3999);
    for (int e = 0; e < 12000; ++e) {
        VertexId u = pick(rng), v = pick(rng);
        if (u != v) g.add_edge(u, v);
    }
    UndirectedView uv(g);
    CHECK(edge_cut(uv, partition_random(g, 2, 1)).fraction == doctest::Approx(0.50).epsilon(0.04));
    CHECK(edge_cut(uv, partition_random(g, 4, 1)).fraction == doctest::Approx(0.75).epsilon(0.04));
}

TEST_CASE("conductance takes the minimum boundary-to-volume ratio") {
    Graph p3 = path3();
    UndirectedView uv(p3);
    CHECK(conductance(uv, PartitionMap(3, 1)) == 0.0);  // whole graph, zero boundary
    CHECK(conductance(uv, split_ab_c()) == doctest::Approx(1.0 / 3.0));

    Graph tb = two_triangles_bridge();
    CHECK(conductance(UndirectedView(tb), natural_split()) == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("conductance rejects zero-volume partitions") {
    Graph p3 = path3();
    UndirectedView uv(p3);
    PartitionMap with_empty(3, 2);  // partition 1 is empty
    CHECK_THROWS_AS(conductance(uv, with_empty), std::domain_error);
}

TEST_CASE("modularity matches direct evaluation") {
    Graph tri = unit_triangle();
    CHECK(modularity(UndirectedView(tri), PartitionMap(3, 1)) == doctest::Approx(0.0));

    // two triangles + bridge, natural split: iw=7, intra=3 per side, vol=7 per
    // side -> 2 * (3/7 - (7/14)^2) = 5/14
    Graph tb = two_triangles_bridge();
    CHECK(modularity(UndirectedView(tb), natural_split()) ==
          doctest::Approx(5.0 / 14.0).epsilon(1e-12));

    Graph edgeless;
    edgeless.add_vertex();
    edgeless.add_vertex();
    CHECK_THROWS_AS(modularity(UndirectedView(edgeless), PartitionMap(2, 1)), std::domain_error);
}

TEST_CASE("modularity of a random assignment is near zero") {
    std::mt19937_64 rng(3);
    Graph g;
    for (int i = 0; i < 3000; ++i) g.add_vertex();
    std::uniform_int_distribution<VertexId> pick(0, 2999);
    for (int e = 0; e < 9000; ++e) {
        VertexId u = pick(rng), v = pick(rng);
        if (u != v) g.add_edge(u, v);
    }
    double m = modularity(UndirectedView(g), partition_random(g, 4, 5));
    CHECK(std::fabs(m) <= 0.02);
}

TEST_CASE("partition count deviation and size stdev") {
    PartitionMap p(6, 2);  // sizes {2,4}
    p.assign(0, 1);
    p.assign(1, 1);
    p.assign(2, 1);
    p.assign(3, 1);
    CHECK(partition_count_dev(p, 2) == 0);
    CHECK(partition_size_stdev(p) == doctest::Approx(1.0));

    PartitionMap balanced(4, 2);
    balanced.assign(2, 1);
    balanced.assign(3, 1);
    CHECK(partition_size_stdev(balanced) == 0.0);

    PartitionMap one_empty(4, 2);  // everything in partition 0
    CHECK(partition_count_dev(one_empty, 2) == 1);
}

TEST_CASE("coefficient of variation is population stdev over mean, in percent") {
    std::vector<double> equal{5, 5, 5, 5};
    CHECK(coefficient_of_variation(equal) == 0.0);
    std::vector<double> two{1, 3};
    CHECK(coefficient_of_variation(two) == doctest::Approx(50.0));
    std::vector<double> skew{10, 10, 10, 30};
    CHECK(coefficient_of_variation(skew) == doctest::Approx(57.735026918962575).epsilon(1e-12));
    std::vector<double> zero{0, 0};
    CHECK_THROWS_AS(coefficient_of_variation(zero), std::domain_error);
}

TEST_CASE("percentage global and its uniform-traversal prediction") {
    CHECK(percentage_global(10, 0) == 0.0);
    CHECK(percentage_global(4, 1) == doctest::Approx(0.25));
    CHECK_THROWS_AS(percentage_global(0, 0), std::domain_error);
    CHECK_THROWS_AS(percentage_global(1, 2), std::invalid_argument);

    CHECK(predicted_percentage_global(1, 2, 0.50) == doctest::Approx(0.1666).epsilon(1e-3));
    CHECK(predicted_percentage_global(1, 8, 0.50) == doctest::Approx(0.0556).epsilon(1e-2));
    CHECK(predicted_percentage_global(1, 8, 0.75) == doctest::Approx(0.0833).epsilon(1e-2));
    CHECK(predicted_percentage_global(1, 2, 0.75) == doctest::Approx(0.2500).epsilon(1e-12));
    CHECK_THROWS_AS(predicted_percentage_global(0, 0, 0.5), std::domain_error);
}

TEST_CASE("relabeling partition ids changes no metric value") {
    Graph tb = two_triangles_bridge();
    UndirectedView uv(tb);
    PartitionMap a = natural_split();
    PartitionMap b(6, 2, 1);  // same split, labels swapped
    for (VertexId v = 3; v < 6; ++v) b.assign(v, 0);
    CHECK(edge_cut(uv, a).weight == edge_cut(uv, b).weight);
    CHECK(conductance(uv, a) == conductance(uv, b));
    CHECK(modularity(uv, a) == doctest::Approx(modularity(uv, b)).epsilon(1e-15));
    CHECK(partition_size_stdev(a) == partition_size_stdev(b));
}

TEST_CASE("moving a vertex that reduces crossing weight reduces edge_cut") {
    Graph tb = two_triangles_bridge();
    UndirectedView uv(tb);
    PartitionMap bad = natural_split();
    bad.assign(2, 1);  // vertex 2 stranded on the wrong side: cut = 2
    double before = edge_cut(uv, bad).weight;
    bad.assign(2, 0);  // move it home: cut = 1
    double after = edge_cut(uv, bad).weight;
    CHECK(after < before);
    CHECK(after == doctest::Approx(1.0));
}

TEST_CASE("quality_report aggregates and degrades gracefully") {
    Graph tb = two_triangles_bridge();
    UndirectedView uv(tb);
    QualityReport r = quality_report(uv, natural_split(), 2);
    CHECK(r.edge_cut_weight == doctest::Approx(1.0));
    CHECK(r.conductance == doctest::Approx(1.0 / 7.0));
    CHECK(r.modularity == doctest::Approx(5.0 / 14.0));
    CHECK(r.partition_count_dev == 0);

    // degenerate all-in-one map at k=2: conductance reported as NaN, not a throw
    QualityReport d = quality_report(uv, PartitionMap(6, 2), 2);
    CHECK(std::isnan(d.conductance));
    CHECK(d.partition_count_dev == 1);
}
