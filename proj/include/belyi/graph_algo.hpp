#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "belyi/metric.hpp"
#include "belyi/rng.hpp"

namespace belyi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Single-source shortest paths; scratch buffers are reusable across calls so
// concurrent queries just use separate instances.
class Dijkstra {
public:
    explicit Dijkstra(const MetricGraph& g) : g_(g), dist_(g.node_count, kInf) {}

    const std::vector<double>& run(std::int32_t src) {
        std::fill(dist_.begin(), dist_.end(), kInf);
        using Item = std::pair<double, std::int32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        dist_[src] = 0.0;
        heap.push({0.0, src});
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist_[u]) continue;
            for (std::int64_t e = g_.adj_offset[u]; e < g_.adj_offset[u + 1]; ++e) {
                const std::int32_t w = g_.adj_to[e];
                const double nd = d + g_.adj_weight[e];
                if (nd < dist_[w]) {
                    dist_[w] = nd;
                    heap.push({nd, w});
                }
            }
        }
        return dist_;
    }

private:
    const MetricGraph& g_;
    std::vector<double> dist_;
};

struct DistanceResult {
    double distance = kInf;
    bool reachable = false;
};

inline DistanceResult shortest_distance(const MetricGraph& g, std::int32_t a, std::int32_t b) {
    if (a < 0 || b < 0 || a >= g.node_count || b >= g.node_count)
        throw std::invalid_argument("shortest_distance: node out of range");
    Dijkstra d(g);
    double v = d.run(a)[b];
    return {v, v < kInf};
}

struct EccentricityResult {
    double value = 0.0;
    std::int32_t farthest = -1;
    std::int32_t unreachable = 0;  // nodes not seen from the source
};

inline EccentricityResult eccentricity(const MetricGraph& g, std::int32_t src) {
    if (src < 0 || src >= g.node_count)
        throw std::invalid_argument("eccentricity: node out of range");
    Dijkstra d(g);
    const auto& dist = d.run(src);
    EccentricityResult r;
    for (std::int32_t v = 0; v < g.node_count; ++v) {
        if (dist[v] == kInf) {
            ++r.unreachable;
            continue;
        }
        if (r.farthest < 0 || dist[v] > r.value) {
            r.value = dist[v];
            r.farthest = v;
        }
    }
    return r;
}

struct DiameterReport {
    double value = 0.0;
    std::int32_t node_a = -1, node_b = -1;
    bool exact = false;          // sweep mode reports a lower bound
    std::int32_t dijkstra_runs = 0;
    std::vector<double> source_eccentricities;
};

inline constexpr std::int32_t kExactDiameterNodeGuard = 50000;

namespace detail {

// Eccentricity-bounding search: repeatedly settle the node with the largest
// eccentricity upper bound until no node can beat the best value found.
// Exact at termination; typically needs a few dozen sources.
inline void exact_diameter_component(const MetricGraph& g,
                                     const std::vector<std::int32_t>& nodes, Dijkstra& dij,
                                     DiameterReport& rep) {
    std::vector<double> ub(g.node_count, kInf);
    std::vector<char> alive(g.node_count, 0);
    for (std::int32_t v : nodes) alive[v] = 1;

    // Start from the busiest node of the component.
    std::int32_t start = nodes[0];
    for (std::int32_t v : nodes)
        if (g.adj_offset[v + 1] - g.adj_offset[v] >
            g.adj_offset[start + 1] - g.adj_offset[start])
            start = v;

    std::int32_t candidate = start;
    while (candidate >= 0) {
        const auto& dist = dij.run(candidate);
        ++rep.dijkstra_runs;
        double ecc = 0.0;
        std::int32_t far = candidate;
        for (std::int32_t v : nodes)
            if (dist[v] < kInf && dist[v] > ecc) {
                ecc = dist[v];
                far = v;
            }
        rep.source_eccentricities.push_back(ecc);
        if (ecc > rep.value) {
            rep.value = ecc;
            rep.node_a = candidate;
            rep.node_b = far;
        }
        alive[candidate] = 0;
        candidate = -1;
        double best_ub = rep.value;
        for (std::int32_t v : nodes) {
            if (!alive[v]) continue;
            ub[v] = std::min(ub[v], dist[v] + ecc);
            if (ub[v] <= rep.value + 1e-12) {
                alive[v] = 0;  // cannot extend the diameter
                continue;
            }
            if (ub[v] > best_ub + 1e-12 ||
                (candidate >= 0 && ub[v] == ub[candidate] && v < candidate)) {
                best_ub = ub[v];
                candidate = v;
            }
        }
    }
}

}  // namespace detail

// Exact diameter by the bounding search (per component; the value is the
// largest component diameter). Guarded against huge graphs.
inline DiameterReport diameter_exact(const MetricGraph& g) {
    if (g.node_count > kExactDiameterNodeGuard)
        throw std::length_error("diameter_exact: graph exceeds the node guard");
    if (g.node_count == 0) throw std::invalid_argument("diameter_exact: empty graph");
    DiameterReport rep;
    rep.exact = true;

    // Components by BFS over the adjacency.
    std::vector<std::int32_t> comp(g.node_count, -1);
    std::int32_t ncomp = 0;
    for (std::int32_t s = 0; s < g.node_count; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        std::vector<std::int32_t> stack = {s};
        while (!stack.empty()) {
            std::int32_t u = stack.back();
            stack.pop_back();
            for (std::int64_t e = g.adj_offset[u]; e < g.adj_offset[u + 1]; ++e)
                if (comp[g.adj_to[e]] < 0) {
                    comp[g.adj_to[e]] = ncomp;
                    stack.push_back(g.adj_to[e]);
                }
        }
        ++ncomp;
    }
    std::vector<std::vector<std::int32_t>> members(ncomp);
    for (std::int32_t v = 0; v < g.node_count; ++v) members[comp[v]].push_back(v);

    Dijkstra dij(g);
    for (const auto& nodes : members)
        if (!nodes.empty()) detail::exact_diameter_component(g, nodes, dij, rep);
    return rep;
}

// Iterated farthest-point sweeps seeded from the k largest disks' centers and
// k random corners. The result is a lower bound on the diameter.
inline DiameterReport diameter_sweep(const MetricGraph& g, std::int32_t k_sources, Rng& rng) {
    if (g.node_count == 0) throw std::invalid_argument("diameter_sweep: empty graph");
    DiameterReport rep;
    rep.exact = false;

    std::vector<std::int32_t> seeds;
    {
        std::vector<std::pair<double, std::int32_t>> centers;
        for (std::int32_t v = 0; v < g.node_count; ++v)
            if (g.is_center[v]) centers.push_back({g.disk_radius[g.node_vertex[v]], v});
        std::sort(centers.begin(), centers.end(), [](const auto& a, const auto& b) {
            return a.first > b.first || (a.first == b.first && a.second < b.second);
        });
        for (std::int32_t i = 0; i < k_sources && i < static_cast<std::int32_t>(centers.size());
             ++i)
            seeds.push_back(centers[i].second);
        std::int32_t corners = 0;
        for (std::int32_t v = 0; v < g.node_count; ++v)
            if (!g.is_center[v]) ++corners;
        for (std::int32_t i = 0; i < k_sources && corners > 0; ++i) {
            std::int32_t pick = static_cast<std::int32_t>(rng.uniform_below(corners));
            for (std::int32_t v = 0; v < g.node_count; ++v)
                if (!g.is_center[v] && pick-- == 0) {
                    seeds.push_back(v);
                    break;
                }
        }
    }

    Dijkstra dij(g);
    for (std::int32_t seed : seeds) {
        std::int32_t cur = seed;
        for (int iter = 0; iter < 8; ++iter) {
            const auto& dist = dij.run(cur);
            ++rep.dijkstra_runs;
            double ecc = 0.0;
            std::int32_t far = cur;
            for (std::int32_t v = 0; v < g.node_count; ++v)
                if (dist[v] < kInf && dist[v] > ecc) {
                    ecc = dist[v];
                    far = v;
                }
            rep.source_eccentricities.push_back(ecc);
            bool improved = ecc > rep.value + 1e-15;
            if (improved) {
                rep.value = ecc;
                rep.node_a = cur;
                rep.node_b = far;
            }
            if (!improved || far == cur) break;
            cur = far;
        }
    }
    return rep;
}

struct DiameterMode {
    bool exact = false;
    std::int32_t sweep_sources = 6;
};

inline DiameterReport diameter(const MetricGraph& g, DiameterMode mode, Rng& rng) {
    return mode.exact ? diameter_exact(g) : diameter_sweep(g, mode.sweep_sources, rng);
}

}  // namespace belyi
