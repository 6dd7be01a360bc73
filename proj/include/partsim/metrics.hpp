// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "partsim/graph.hpp"

namespace partsim {

struct QualityReport {
    double edge_cut_weight = 0.0;
    double edge_cut_fraction = 0.0;
    double conductance = 0.0;
    double modularity = 0.0;
    std::uint32_t partition_count_dev = 0;
    double partition_size_stdev = 0.0;
};

struct BalanceReport {
    double cov_vertices = 0.0;  // percentages
    double cov_edges = 0.0;
    double cov_traffic = 0.0;
};

struct EdgeCut {
    double weight = 0.0;
    double fraction = 0.0;
};

// All quality metrics operate on the undirected merged-weight view.

double volume(const UndirectedView& uv, const PartitionMap& p, PartitionId part);
double intra_weight(const UndirectedView& uv, const PartitionMap& p, PartitionId part);
double partition_degree(const UndirectedView& uv, const PartitionMap& p, PartitionId part);

// Crossing weight counted once per unordered crossing pair; fraction is
// relative to the total undirected edge weight.
EdgeCut edge_cut(const UndirectedView& uv, const PartitionMap& p);

// min over partitions of partition_degree / volume; a zero-volume
// partition is an error, not infinity.
double conductance(const UndirectedView& uv, const PartitionMap& p);

double modularity(const UndirectedView& uv, const PartitionMap& p);

std::uint32_t partition_count_dev(const PartitionMap& p, std::uint32_t desired_k);
double partition_size_stdev(const PartitionMap& p);

// Population standard deviation as a percentage of the mean; mean must be > 0.
double coefficient_of_variation(std::span<const double> values);

double percentage_global(std::uint64_t total_traffic, std::uint64_t global_traffic);

// Uniform-traversal traffic model: (t_pg * ec) / (t_l + t_pg).
double predicted_percentage_global(std::uint32_t t_pg, std::uint32_t t_l, double ec_fraction);

QualityReport quality_report(const UndirectedView& uv, const PartitionMap& p,
                             std::uint32_t desired_k);

}  // namespace partsim
