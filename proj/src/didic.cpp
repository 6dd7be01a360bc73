// SPDX-License-Identifier: Apache-2.0
#include "partsim/didic.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace partsim {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

void DidicConfig::validate() const {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (primary_steps < 1 || secondary_steps < 1)
        throw std::invalid_argument("psi and rho must be >= 1");
    if (!(benefit_high > benefit_low) || !(benefit_low > 0.0))
        throw std::invalid_argument("benefit values must satisfy high > low > 0");
    if (flow_scale_mode == FlowScaleMode::Constant &&
        (!(flow_scale_constant > 0.0) || flow_scale_constant > 1.0))
        throw std::invalid_argument("constant flow scale must lie in (0, 1]");
}

LoadState init_load(const Graph& g, const PartitionMap& p0, std::uint32_t k) {
    if (p0.size() != g.num_vertices() || p0.k() != k)
        throw std::invalid_argument("partition map does not match graph/k");
    LoadState s;
    s.num_vertices = g.num_vertices();
    s.k = k;
    s.w.assign(s.num_vertices * k, 0.0);
    for (VertexId v = 0; v < s.num_vertices; ++v) s.primary(v, p0[v]) = 100.0;
    s.l = s.w;
    return s;
}

double flow_scale(const UndirectedView& uv, VertexId u, VertexId v, const DidicConfig& cfg) {
    if (cfg.flow_scale_mode == FlowScaleMode::Constant) return cfg.flow_scale_constant;
    return 1.0 / (1.0 + static_cast<double>(std::max(uv.degree_count(u), uv.degree_count(v))));
}

PartitionId affiliate(const LoadState& state, VertexId v) {
    PartitionId best = 0;
    double best_load = state.primary(v, 0);
    for (std::uint32_t c = 1; c < state.k; ++c) {
        double load = state.primary(v, c);
        if (load > best_load) {
            best_load = load;
            best = c;
        }
    }
    return best;
}

DidicPartitioner::DidicPartitioner(const Graph& g, const PartitionMap& p0, DidicConfig cfg)
    : DidicPartitioner(g, p0, cfg, init_load(g, p0, cfg.k)) {}

DidicPartitioner::DidicPartitioner(const Graph& g, const PartitionMap& p0, DidicConfig cfg,
                                   LoadState state)
    : graph_(g), view_(g), cfg_(cfg), state_(std::move(state)), partitioning_(p0) {
    cfg_.validate();
    if (p0.size() != g.num_vertices() || p0.k() != cfg_.k)
        throw std::invalid_argument("partition map does not match graph/k");
    if (state_.num_vertices != g.num_vertices() || state_.k != cfg_.k)
        throw std::invalid_argument("load state does not match graph/k");
    scratch_.resize(g.num_vertices());
    // Flow coefficients wt(e) * alpha(e), flattened per vertex incidence list.
    alpha_offset_.resize(g.num_vertices() + 1, 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        alpha_offset_[v + 1] = alpha_offset_[v] + view_.incidences(v).size();
    alpha_.resize(alpha_offset_.back());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        std::size_t base = alpha_offset_[v];
        const auto& incs = view_.incidences(v);
        for (std::size_t i = 0; i < incs.size(); ++i)
            alpha_[base + i] = incs[i].weight * flow_scale(view_, v, incs[i].neighbor, cfg_);
    }
    adapt_rng_state_ = cfg_.seed ^ 0xd1b54a32d192ed03ULL;
}

void DidicPartitioner::secondary_step(std::uint32_t c) {
    if (c >= cfg_.k) throw std::out_of_range("system index out of range");
    const std::size_t n = state_.num_vertices;
    const double* cur = state_.l.data() + std::size_t{c} * n;
    double* next = scratch_.data();
    const double bh = cfg_.benefit_high;
    const double bl = cfg_.benefit_low;
    const auto& assign = partitioning_.assignments();

    auto kernel = [&](std::int64_t u) {
        const auto& incs = view_.incidences(static_cast<VertexId>(u));
        const double* coeff = alpha_.data() + alpha_offset_[u];
        double bu = assign[u] == c ? bh : bl;
        double lu = cur[u] / bu;
        double flow = 0.0;
        for (std::size_t i = 0; i < incs.size(); ++i) {
            VertexId v = incs[i].neighbor;
            double bv = assign[v] == c ? bh : bl;
            flow += coeff[i] * (lu - cur[v] / bv);
        }
        next[u] = cur[u] - flow;
    };

    if (cfg_.execution == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u) kernel(u);
    } else {
        for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u) kernel(u);
    }
    std::memcpy(state_.l.data() + std::size_t{c} * n, next, n * sizeof(double));
}

void DidicPartitioner::primary_step(std::uint32_t c) {
    if (c >= cfg_.k) throw std::out_of_range("system index out of range");
    for (std::uint32_t r = 0; r < cfg_.secondary_steps; ++r) secondary_step(c);

    const std::size_t n = state_.num_vertices;
    const double* cur = state_.w.data() + std::size_t{c} * n;
    const double* lnew = state_.l.data() + std::size_t{c} * n;
    double* next = scratch_.data();

    auto kernel = [&](std::int64_t u) {
        const auto& incs = view_.incidences(static_cast<VertexId>(u));
        const double* coeff = alpha_.data() + alpha_offset_[u];
        double wu = cur[u];
        double flow = 0.0;
        for (std::size_t i = 0; i < incs.size(); ++i)
            flow += coeff[i] * (wu - cur[incs[i].neighbor]);
        next[u] = wu + lnew[u] - flow;
    };

    if (cfg_.execution == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u) kernel(u);
    } else {
        for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u) kernel(u);
    }
    std::memcpy(state_.w.data() + std::size_t{c} * n, next, n * sizeof(double));
}

void DidicPartitioner::refresh_affiliation() {
    for (VertexId v = 0; v < state_.num_vertices; ++v)
        partitioning_.assign(v, affiliate(state_, v));
}

void DidicPartitioner::iterate(const ChangeLog* changes) {
    const std::size_t n = state_.num_vertices;
    // Re-derive the disturbance load from the current affiliation. Secondary
    // load left over from earlier iterations forms a near-stationary ambient
    // level (~ mass/10 outside the owning partition) that feeds stray islands
    // of misaffiliated vertices forever; re-seeding each iteration keeps the
    // disturbance aligned with the partitioning it is meant to reinforce.
    std::fill(state_.l.begin(), state_.l.end(), 0.0);
    for (VertexId v = 0; v < n; ++v) state_.secondary(v, partitioning_[v]) = 100.0;
    for (std::uint32_t c = 0; c < cfg_.k; ++c)
        for (std::uint32_t s = 0; s < cfg_.primary_steps; ++s) primary_step(c);
    // Shift every primary system to the common mean. Diffusion flows are
    // invariant under a per-system constant shift, so this leaves the load
    // dynamics untouched; it only removes the uniform bias between systems.
    // Each system accumulates total mass proportional to its secondary mass,
    // and without the shift that accumulated difference grows without bound
    // and eventually outweighs the local signal the affiliation argmax needs.
    {
        std::vector<double> mean(cfg_.k, 0.0);
        double grand = 0.0;
        for (std::uint32_t c = 0; c < cfg_.k; ++c) {
            const double* w = state_.w.data() + std::size_t{c} * n;
            for (std::size_t v = 0; v < n; ++v) mean[c] += w[v];
            mean[c] /= static_cast<double>(n);
            grand += mean[c];
        }
        grand /= static_cast<double>(cfg_.k);
        for (std::uint32_t c = 0; c < cfg_.k; ++c) {
            double* w = state_.w.data() + std::size_t{c} * n;
            double shift = grand - mean[c];
            for (std::size_t v = 0; v < n; ++v) w[v] += shift;
        }
    }
    refresh_affiliation();
    if (changes) adapt_to_changes(*changes);
}

void DidicPartitioner::run(std::uint32_t iterations) {
    for (std::uint32_t t = 0; t < iterations; ++t) iterate();
}

void DidicPartitioner::adapt_to_changes(const ChangeLog& changes) {
    const std::size_t n = state_.num_vertices;
    auto remove_vertex = [&](VertexId v) {
        const auto& incs = view_.incidences(v);
        std::size_t neighbors = 0;
        for (const auto& inc : incs)
            if (inc.neighbor != v) ++neighbors;
        for (std::uint32_t c = 0; c < cfg_.k; ++c) {
            double* w = state_.w.data() + std::size_t{c} * n;
            double* l = state_.l.data() + std::size_t{c} * n;
            if (neighbors > 0) {
                double w_share = w[v] / static_cast<double>(neighbors);
                double l_share = l[v] / static_cast<double>(neighbors);
                for (const auto& inc : incs) {
                    if (inc.neighbor == v) continue;
                    w[inc.neighbor] += w_share;
                    l[inc.neighbor] += l_share;
                }
            }
            // isolated vertex: its load has nowhere to go and is dropped
            w[v] = 0.0;
            l[v] = 0.0;
        }
    };
    auto add_vertex = [&](VertexId v, PartitionId target) {
        for (std::uint32_t c = 0; c < cfg_.k; ++c) {
            double val = c == target ? 100.0 : 0.0;
            state_.primary(v, c) = val;
            state_.secondary(v, c) = val;
        }
        partitioning_.assign(v, target);
    };

    for (const ChangeRecord& rec : changes) {
        if (rec.vertex >= n) throw std::out_of_range("change record references unknown vertex");
        PartitionId target = rec.target
                                 ? *rec.target
                                 : static_cast<PartitionId>(splitmix64(adapt_rng_state_) % cfg_.k);
        if (target >= cfg_.k) throw std::out_of_range("change record target out of range");
        switch (rec.kind) {
            case ChangeRecord::Remove:
                remove_vertex(rec.vertex);
                break;
            case ChangeRecord::Add:
                add_vertex(rec.vertex, target);
                break;
            case ChangeRecord::Move:
                remove_vertex(rec.vertex);
                add_vertex(rec.vertex, target);
                break;
        }
    }
}

PartitionMap run_didic(const Graph& g, const PartitionMap& p0, const DidicConfig& cfg) {
    DidicPartitioner part(g, p0, cfg);
    part.run(cfg.iterations);
    return part.partitioning();
}

}  // namespace partsim
