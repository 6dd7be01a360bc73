// SPDX-License-Identifier: Apache-2.0
#include "partsim/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace partsim {

// --- File system ---------------------------------------------------------------

Graph generate_fs(const FsGenSpec& spec) {
    if (spec.num_orgs < 1 || spec.users_per_org < 1)
        throw std::invalid_argument("fs spec needs at least one org and user");
    if (spec.folder_branch_files_min < 1 ||
        spec.folder_branch_files_max < spec.folder_branch_files_min ||
        spec.folder_branch_folders_max < spec.folder_branch_folders_min)
        throw std::invalid_argument("fs spec branching ranges are invalid");

    std::mt19937_64 rng(spec.seed);
    Graph g;

    std::vector<VertexId> orgs;
    std::vector<VertexId> users;
    std::vector<VertexId> user_of_root;  // owning user per root folder
    for (std::uint32_t o = 0; o < spec.num_orgs; ++o) orgs.push_back(g.add_vertex(VertexKind::Org));
    for (std::uint32_t o = 0; o < spec.num_orgs; ++o)
        for (std::uint32_t u = 0; u < spec.users_per_org; ++u) {
            VertexId user = g.add_vertex(VertexKind::User);
            g.add_edge(user, orgs[o], 1.0, "MEMBER_OF");
            users.push_back(user);
        }

    // Estimate the folder budget from the expected cost of one folder:
    // the folder itself, its files, and the events hanging off those files.
    double mean_files = 0.5 * (spec.folder_branch_files_min + spec.folder_branch_files_max);
    double mean_events = 0.5 * (spec.events_per_file_min + spec.events_per_file_max);
    double per_folder = 1.0 + mean_files * (1.0 + mean_events);
    std::size_t fixed = g.num_vertices();
    if (spec.target_vertices <= fixed + static_cast<std::size_t>(per_folder) * users.size())
        throw std::invalid_argument("fs target_vertices too small for org/user layout");
    auto folder_budget =
        static_cast<std::size_t>((spec.target_vertices - fixed) / per_folder);
    std::size_t per_user_budget = std::max<std::size_t>(folder_budget / users.size(), 1);

    std::uniform_int_distribution<std::uint32_t> sub_dist(spec.folder_branch_folders_min,
                                                          spec.folder_branch_folders_max);
    std::uniform_int_distribution<std::uint32_t> file_dist(spec.folder_branch_files_min,
                                                           spec.folder_branch_files_max);
    std::uniform_int_distribution<std::uint32_t> event_dist(spec.events_per_file_min,
                                                            spec.events_per_file_max);

    std::vector<std::pair<VertexId, VertexId>> folders;  // (folder, owning user)
    for (VertexId user : users) {
        VertexId root = g.add_vertex(VertexKind::Folder);
        g.add_edge(user, root, 1.0, "OWNS");
        folders.emplace_back(root, user);
        std::size_t created = 1;
        std::deque<std::pair<VertexId, std::uint32_t>> queue{{root, 0}};
        while (!queue.empty() && created < per_user_budget) {
            auto [folder, depth] = queue.front();
            queue.pop_front();
            if (depth + 1 >= spec.max_depth) continue;
            std::uint32_t nsub = sub_dist(rng);
            for (std::uint32_t i = 0; i < nsub && created < per_user_budget; ++i) {
                VertexId sub = g.add_vertex(VertexKind::Folder);
                g.add_edge(folder, sub, 1.0, "CONTAINS");
                folders.emplace_back(sub, user);
                queue.emplace_back(sub, depth + 1);
                ++created;
            }
        }
    }

    for (auto [folder, user] : folders) {
        std::uint32_t nfiles = file_dist(rng);
        for (std::uint32_t i = 0; i < nfiles; ++i) {
            VertexId file = g.add_vertex(VertexKind::File);
            g.add_edge(folder, file, 1.0, "CONTAINS");
            std::uint32_t nev = event_dist(rng);
            for (std::uint32_t e = 0; e < nev; ++e) {
                VertexId ev = g.add_vertex(VertexKind::Event);
                g.add_edge(file, ev, 1.0, "HAS_EVENT");
                g.add_edge(ev, user, 1.0, "ACTOR");
                g.add_edge(ev, file, 1.0, "TARGET");
            }
        }
    }
    return g;
}

// --- GIS -----------------------------------------------------------------------

namespace {

double euclid(double x1, double y1, double x2, double y2) {
    return std::hypot(x1 - x2, y1 - y2);
}

struct DisjointSet {
    std::vector<std::uint32_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

std::vector<std::pair<double, double>> gis_city_centers(const GisGenSpec& spec) {
    std::mt19937_64 rng(spec.seed ^ 0xc17f5a1e2b3d4e5fULL);
    double lon_pad = 0.1 * (spec.lon_max - spec.lon_min);
    double lat_pad = 0.1 * (spec.lat_max - spec.lat_min);
    std::uniform_real_distribution<double> lon_dist(spec.lon_min + lon_pad, spec.lon_max - lon_pad);
    std::uniform_real_distribution<double> lat_dist(spec.lat_min + lat_pad, spec.lat_max - lat_pad);
    std::vector<std::pair<double, double>> centers;
    double min_sep = 0.25 * (spec.lon_max - spec.lon_min);
    while (centers.size() < spec.num_cities) {
        double lon = lon_dist(rng);
        double lat = lat_dist(rng);
        bool ok = true;
        for (auto [clon, clat] : centers)
            if (euclid(lon, lat, clon, clat) < min_sep) ok = false;
        if (ok || centers.size() > 200) centers.emplace_back(lon, lat);
        min_sep *= 0.999;  // relax slowly so dense specs terminate
    }
    return centers;
}

Graph generate_gis(const GisGenSpec& spec) {
    if (spec.num_cities < 1) throw std::invalid_argument("gis spec needs at least one city");
    if (spec.target_vertices < spec.num_cities * 4)
        throw std::invalid_argument("gis target_vertices too small");

    std::mt19937_64 rng(spec.seed);
    Graph g;
    auto centers = gis_city_centers(spec);

    auto rural_total = static_cast<std::size_t>(spec.rural_fraction * spec.target_vertices);
    if (spec.num_cities == 1) rural_total = std::min<std::size_t>(rural_total, 0);
    std::size_t urban_total = spec.target_vertices - rural_total;
    std::size_t urban_per_city = urban_total / spec.num_cities;

    std::normal_distribution<double> scatter(0.0, spec.city_sigma);
    std::uniform_int_distribution<std::uint32_t> knn_dist(spec.urban_knn_min, spec.urban_knn_max);
    std::uniform_real_distribution<double> urban_factor(0.6 * spec.speed_factor_max,
                                                        spec.speed_factor_max);
    std::uniform_real_distribution<double> rural_factor(spec.speed_factor_min,
                                                        1.5 * spec.speed_factor_min);

    auto coord = [&](VertexId v) {
        return std::pair{g.property(v, "longitude"), g.property(v, "latitude")};
    };
    auto add_road = [&](VertexId a, VertexId b, double factor, const char* label) {
        auto [ax, ay] = coord(a);
        auto [bx, by] = coord(b);
        double w = std::clamp(euclid(ax, ay, bx, by) * factor, 1e-9, 1.0);
        g.add_edge(a, b, w, label);
    };

    std::vector<std::vector<VertexId>> city_vertices(spec.num_cities);
    for (std::uint32_t c = 0; c < spec.num_cities; ++c) {
        auto [clon, clat] = centers[c];
        for (std::size_t i = 0; i < urban_per_city; ++i) {
            double lon = std::clamp(clon + scatter(rng), spec.lon_min, spec.lon_max);
            double lat = std::clamp(clat + scatter(rng), spec.lat_min, spec.lat_max);
            city_vertices[c].push_back(g.add_vertex(
                VertexKind::GisPoint, PropertyMap{{"longitude", lon}, {"latitude", lat}}));
        }
        // connect each urban vertex to its nearest in-city neighbors
        const auto& cv = city_vertices[c];
        std::set<std::pair<VertexId, VertexId>> present;
        for (VertexId v : cv) {
            auto [vx, vy] = coord(v);
            std::vector<std::pair<double, VertexId>> dists;
            for (VertexId u : cv) {
                if (u == v) continue;
                auto [ux, uy] = coord(u);
                dists.emplace_back(euclid(vx, vy, ux, uy), u);
            }
            std::uint32_t want = std::min<std::uint32_t>(knn_dist(rng), dists.size());
            std::partial_sort(dists.begin(), dists.begin() + want, dists.end());
            for (std::uint32_t i = 0; i < want; ++i) {
                VertexId u = dists[i].second;
                auto key = std::minmax(v, u);
                if (present.insert({key.first, key.second}).second)
                    add_road(v, u, urban_factor(rng), "STREET");
            }
        }
    }

    // Corridors along a ring of cities carry the rural vertices.
    if (spec.num_cities > 1 && rural_total > 0) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> corridors;
        std::vector<double> lengths;
        double total_len = 0.0;
        for (std::uint32_t c = 0; c < spec.num_cities; ++c) {
            std::uint32_t d = (c + 1) % spec.num_cities;
            corridors.emplace_back(c, d);
            double len = euclid(centers[c].first, centers[c].second, centers[d].first,
                                centers[d].second);
            lengths.push_back(len);
            total_len += len;
        }
        std::normal_distribution<double> jitter(0.0, 0.02);
        for (std::size_t i = 0; i < corridors.size(); ++i) {
            auto [a, b] = corridors[i];
            auto n = static_cast<std::size_t>(rural_total * lengths[i] / total_len);
            if (n == 0) continue;
            auto [ax, ay] = centers[a];
            auto [bx, by] = centers[b];
            VertexId prev = 0;
            bool have_prev = false;
            for (std::size_t j = 0; j < n; ++j) {
                double t = static_cast<double>(j + 1) / static_cast<double>(n + 1);
                double lon = std::clamp(ax + t * (bx - ax) + jitter(rng), spec.lon_min, spec.lon_max);
                double lat = std::clamp(ay + t * (by - ay) + jitter(rng), spec.lat_min, spec.lat_max);
                VertexId v = g.add_vertex(VertexKind::GisPoint,
                                          PropertyMap{{"longitude", lon}, {"latitude", lat}});
                if (have_prev) add_road(prev, v, rural_factor(rng), "HIGHWAY");
                prev = v;
                have_prev = true;
                if (j == 0 && !city_vertices[a].empty()) {
                    // attach the corridor end to the nearest urban vertex
                    VertexId best = city_vertices[a][0];
                    double best_d = 1e18;
                    for (VertexId u : city_vertices[a]) {
                        auto [ux, uy] = coord(u);
                        double d = euclid(lon, lat, ux, uy);
                        if (d < best_d) {
                            best_d = d;
                            best = u;
                        }
                    }
                    add_road(best, v, rural_factor(rng), "HIGHWAY");
                }
                if (j == n - 1 && !city_vertices[b].empty()) {
                    VertexId best = city_vertices[b][0];
                    double best_d = 1e18;
                    for (VertexId u : city_vertices[b]) {
                        auto [ux, uy] = coord(u);
                        double d = euclid(lon, lat, ux, uy);
                        if (d < best_d) {
                            best_d = d;
                            best = u;
                        }
                    }
                    add_road(v, best, rural_factor(rng), "HIGHWAY");
                }
            }
        }
    }

    // Connectivity repair: bridge remaining components through their closest
    // vertex pair (nearest-vertex scan per component pair).
    DisjointSet ds(g.num_vertices());
    for (const Edge& e : g.edges()) ds.unite(e.start, e.end);
    std::map<std::uint32_t, std::vector<VertexId>> components;
    for (VertexId v = 0; v < g.num_vertices(); ++v) components[ds.find(v)].push_back(v);
    while (components.size() > 1) {
        auto it = components.begin();
        const auto& base = it->second;
        auto jt = std::next(it);
        VertexId best_a = base[0], best_b = jt->second[0];
        double best_d = 1e18;
        for (VertexId a : base) {
            auto [ax, ay] = coord(a);
            for (VertexId b : jt->second) {
                auto [bx, by] = coord(b);
                double d = euclid(ax, ay, bx, by);
                if (d < best_d) {
                    best_d = d;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        std::cerr << "gis generator: bridging disconnected component ("
                  << jt->second.size() << " vertices)\n";
        add_road(best_a, best_b, rural_factor(rng), "HIGHWAY");
        ds.unite(best_a, best_b);
        std::vector<VertexId> merged = base;
        merged.insert(merged.end(), jt->second.begin(), jt->second.end());
        components.erase(it);
        components.erase(jt);
        components[ds.find(merged[0])] = std::move(merged);
    }
    return g;
}

// --- Social --------------------------------------------------------------------

Graph generate_social(const SocialGenSpec& spec) {
    if (spec.target_vertices < 3) throw std::invalid_argument("social spec needs >= 3 vertices");
    std::mt19937_64 rng(spec.seed);
    Graph g;

    // out-degree law: P(0) fixed, P(d) ~ d^-exponent for d >= 1
    std::uint32_t cap = std::min(spec.max_out_degree, spec.target_vertices - 1);
    std::vector<double> cdf(cap + 1, 0.0);
    cdf[0] = spec.zero_out_degree_prob;
    double tail = 0.0;
    for (std::uint32_t d = 1; d <= cap; ++d)
        tail += std::pow(static_cast<double>(d), -spec.attachment_exponent);
    for (std::uint32_t d = 1; d <= cap; ++d)
        cdf[d] = cdf[d - 1] + (1.0 - spec.zero_out_degree_prob) *
                                  std::pow(static_cast<double>(d), -spec.attachment_exponent) / tail;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw_out_degree = [&]() -> std::uint32_t {
        double x = unit(rng);
        return static_cast<std::uint32_t>(
            std::lower_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
    };

    // in-degree-plus-one preferential pool
    std::vector<VertexId> pool;
    for (int i = 0; i < 3; ++i) pool.push_back(g.add_vertex(VertexKind::SocialUser));
    g.add_edge(0, 1, 1.0, "FOLLOWS");
    g.add_edge(1, 2, 1.0, "FOLLOWS");
    g.add_edge(2, 0, 1.0, "FOLLOWS");
    pool.push_back(1);
    pool.push_back(2);
    pool.push_back(0);

    while (g.num_vertices() < spec.target_vertices) {
        VertexId v = g.add_vertex(VertexKind::SocialUser);
        pool.push_back(v);
        std::uint32_t d = draw_out_degree();
        std::set<VertexId> chosen;
        for (std::uint32_t i = 0; i < d; ++i) {
            VertexId target = v;
            for (int attempt = 0; attempt < 16 && (target == v || chosen.contains(target));
                 ++attempt) {
                std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
                target = pool[pick(rng)];
            }
            if (target == v || chosen.contains(target)) continue;
            chosen.insert(target);
            g.add_edge(v, target, 1.0, "FOLLOWS");
            pool.push_back(target);
        }
    }
    return g;
}

// --- Clustering coefficient -------------------------------------------------------

double clustering_coefficient(const Graph& g) {
    if (g.num_vertices() == 0) return 0.0;
    UndirectedView uv(g);
    std::vector<std::set<VertexId>> nbrs(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        for (const auto& inc : uv.incidences(v))
            if (inc.neighbor != v) nbrs[v].insert(inc.neighbor);
    double sum = 0.0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const auto& nv = nbrs[v];
        std::size_t d = nv.size();
        if (d < 2) continue;
        std::size_t links = 0;
        for (VertexId a : nv)
            for (VertexId b : nbrs[a])
                if (b > a && nv.contains(b)) ++links;
        sum += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * (d - 1));
    }
    return sum / static_cast<double>(g.num_vertices());
}

}  // namespace partsim
