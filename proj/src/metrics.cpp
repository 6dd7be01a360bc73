// SPDX-License-Identifier: Apache-2.0
#include "partsim/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace partsim {

double volume(const UndirectedView& uv, const PartitionMap& p, PartitionId part) {
    if (part >= p.k()) throw std::out_of_range("partition id out of range");
    double sum = 0.0;
    for (VertexId v = 0; v < uv.num_vertices(); ++v)
        if (p[v] == part) sum += uv.degree(v);
    return sum;
}

double intra_weight(const UndirectedView& uv, const PartitionMap& p, PartitionId part) {
    if (part >= p.k()) throw std::out_of_range("partition id out of range");
    double sum = 0.0;
    uv.for_each_pair([&](VertexId u, VertexId v, double w) {
        if (p[u] == part && p[v] == part) sum += w;
    });
    return sum;
}

double partition_degree(const UndirectedView& uv, const PartitionMap& p, PartitionId part) {
    if (part >= p.k()) throw std::out_of_range("partition id out of range");
    double sum = 0.0;
    uv.for_each_pair([&](VertexId u, VertexId v, double w) {
        if ((p[u] == part) != (p[v] == part)) sum += w;
    });
    return sum;
}

EdgeCut edge_cut(const UndirectedView& uv, const PartitionMap& p) {
    double crossing = 0.0;
    uv.for_each_pair([&](VertexId u, VertexId v, double w) {
        if (p[u] != p[v]) crossing += w;
    });
    double total = uv.total_weight();
    return {crossing, total > 0.0 ? crossing / total : 0.0};
}

double conductance(const UndirectedView& uv, const PartitionMap& p) {
    std::vector<double> vol(p.k(), 0.0);
    std::vector<double> deg(p.k(), 0.0);
    for (VertexId v = 0; v < uv.num_vertices(); ++v) vol[p[v]] += uv.degree(v);
    uv.for_each_pair([&](VertexId u, VertexId v, double w) {
        if (p[u] != p[v]) {
            deg[p[u]] += w;
            deg[p[v]] += w;
        }
    });
    double best = std::numeric_limits<double>::infinity();
    for (PartitionId i = 0; i < p.k(); ++i) {
        if (vol[i] <= 0.0) throw std::domain_error("conductance undefined for zero-volume partition");
        best = std::min(best, deg[i] / vol[i]);
    }
    return best;
}

double modularity(const UndirectedView& uv, const PartitionMap& p) {
    std::vector<double> intra(p.k(), 0.0);
    std::vector<double> vol(p.k(), 0.0);
    uv.for_each_pair([&](VertexId u, VertexId v, double w) {
        if (p[u] == p[v]) intra[p[u]] += w;
    });
    for (VertexId v = 0; v < uv.num_vertices(); ++v) vol[p[v]] += uv.degree(v);
    double iw_total = uv.total_weight();
    if (iw_total <= 0.0) throw std::domain_error("modularity undefined for edgeless graph");
    double mod = 0.0;
    for (PartitionId i = 0; i < p.k(); ++i) {
        double frac = vol[i] / (2.0 * iw_total);
        mod += intra[i] / iw_total - frac * frac;
    }
    return mod;
}

std::uint32_t partition_count_dev(const PartitionMap& p, std::uint32_t desired_k) {
    std::uint32_t created = 0;
    for (std::size_t s : p.partition_sizes())
        if (s > 0) ++created;
    return created > desired_k ? created - desired_k : desired_k - created;
}

double partition_size_stdev(const PartitionMap& p) {
    std::vector<std::size_t> sizes = p.partition_sizes();
    double mean = 0.0;
    for (std::size_t s : sizes) mean += static_cast<double>(s);
    mean /= static_cast<double>(sizes.size());
    double var = 0.0;
    for (std::size_t s : sizes) {
        double d = static_cast<double>(s) - mean;
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(sizes.size()));
}

double coefficient_of_variation(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("coefficient of variation needs values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (mean <= 0.0) throw std::domain_error("coefficient of variation needs positive mean");
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    return 100.0 * std::sqrt(var / static_cast<double>(values.size())) / mean;
}

double percentage_global(std::uint64_t total_traffic, std::uint64_t global_traffic) {
    if (total_traffic == 0) throw std::domain_error("percentage global undefined for zero traffic");
    if (global_traffic > total_traffic)
        throw std::invalid_argument("global traffic exceeds total traffic");
    return static_cast<double>(global_traffic) / static_cast<double>(total_traffic);
}

double predicted_percentage_global(std::uint32_t t_pg, std::uint32_t t_l, double ec_fraction) {
    if (t_pg + t_l == 0) throw std::domain_error("predicted percentage global needs traffic units");
    if (ec_fraction < 0.0 || ec_fraction > 1.0)
        throw std::invalid_argument("edge-cut fraction must lie in [0,1]");
    return (static_cast<double>(t_pg) * ec_fraction) / static_cast<double>(t_l + t_pg);
}

QualityReport quality_report(const UndirectedView& uv, const PartitionMap& p,
                             std::uint32_t desired_k) {
    QualityReport r;
    EdgeCut ec = edge_cut(uv, p);
    r.edge_cut_weight = ec.weight;
    r.edge_cut_fraction = ec.fraction;
    if (uv.total_weight() > 0.0) {
        try {
            r.conductance = conductance(uv, p);
        } catch (const std::domain_error&) {
            // degenerate partitioning (empty partition); keep reports flowing
            r.conductance = std::numeric_limits<double>::quiet_NaN();
        }
        r.modularity = modularity(uv, p);
    }
    r.partition_count_dev = partition_count_dev(p, desired_k);
    r.partition_size_stdev = partition_size_stdev(p);
    return r;
}

}  // namespace partsim
