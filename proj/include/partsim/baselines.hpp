// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "partsim/graph.hpp"

namespace partsim {

enum class PartitionMethod : std::uint8_t { Random, HardcodedFs, HardcodedGisLon, Didic };

const char* to_string(PartitionMethod m);
PartitionMethod partition_method_from_string(const std::string& s);

// i.i.d. uniform assignment, deterministic per seed.
PartitionMap partition_random(const Graph& g, std::uint32_t k, std::uint64_t seed);

// Subtree partitioning for generated file-system graphs: leaf folders in
// depth-first order split into k equal contiguous segments, ancestors by
// majority of their child folders, non-folder vertices following their parent.
PartitionMap partition_fs_subtrees(const Graph& g, std::uint32_t k);

// Longitude bands with equal vertex counts (east-to-west scan order is a
// plain ascending sort; ties break by id).
PartitionMap partition_gis_longitude(const Graph& g, std::uint32_t k);

}  // namespace partsim
