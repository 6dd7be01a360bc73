// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "partsim/graph.hpp"

namespace partsim {

// Seeded synthetic generators structurally matched to the three evaluation
// topologies: a file-system tree with event vertices, a geometric road
// network with dense city clusters, and a scale-free social graph.

struct FsGenSpec {
    std::uint64_t seed = 1;
    std::uint32_t num_orgs = 5;
    std::uint32_t users_per_org = 5;
    std::uint32_t folder_branch_folders_min = 2;  // subfolders per internal folder
    std::uint32_t folder_branch_folders_max = 3;
    std::uint32_t folder_branch_files_min = 30;
    std::uint32_t folder_branch_files_max = 33;
    std::uint32_t events_per_file_min = 1;
    std::uint32_t events_per_file_max = 2;
    std::uint32_t max_depth = 10;
    std::uint32_t target_vertices = 10000;
};

struct GisGenSpec {
    std::uint64_t seed = 1;
    std::uint32_t num_cities = 5;
    // coordinate box the generated map lives in
    double lon_min = 20.0, lon_max = 30.0;
    double lat_min = 40.0, lat_max = 50.0;
    std::uint32_t target_vertices = 10000;
    double rural_fraction = 0.45;  // share of vertices on inter-city corridors
    double city_sigma = 0.15;      // urban scatter around a city center, degrees
    std::uint32_t urban_knn_min = 3;
    std::uint32_t urban_knn_max = 6;
    // travel-time factors per unit distance; urban streets are slow
    double speed_factor_min = 0.5;
    double speed_factor_max = 2.0;
};

struct SocialGenSpec {
    std::uint64_t seed = 1;
    std::uint32_t target_vertices = 10000;
    double zero_out_degree_prob = 0.12;
    double attachment_exponent = 2.7;  // out-degree tail exponent
    std::uint32_t max_out_degree = 1000;
};

Graph generate_fs(const FsGenSpec& spec);
Graph generate_gis(const GisGenSpec& spec);
Graph generate_social(const SocialGenSpec& spec);

// City centers used by a generated GIS graph (recomputed from the spec seed).
std::vector<std::pair<double, double>> gis_city_centers(const GisGenSpec& spec);

// Global average local clustering coefficient on the undirected view;
// vertices with fewer than two neighbors contribute zero.
double clustering_coefficient(const Graph& g);

}  // namespace partsim
