#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "belyi/triangulation.hpp"

namespace belyi {

inline constexpr double kPi = 3.14159265358979323846;

// Parameters of the disk-gluing model: every vertex of degree d becomes a
// hyperbolic disk of radius max(log(alpha*d), rho0), disks talk to each other
// through faces at cost c_face.
struct ModelParams {
    double epsilon = 0.1;
    double L = 10.0;
    double R = 0.0;
    double alpha = 0.0;
    double rho0 = 0.0;
    double c_face = 0.0;
};

struct ParamOverrides {
    std::optional<double> alpha, rho0, c_face;
};

inline ModelParams derive_params(double epsilon, double L, ParamOverrides ov = {}) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("derive_params: epsilon must lie in (0,1)");
    if (!(L > 0.0)) throw std::invalid_argument("derive_params: L must be positive");
    ModelParams p;
    p.epsilon = epsilon;
    p.L = L;
    const double e = std::exp(2.0 * kPi / L);
    p.R = std::pow(1.0 + epsilon, 1.5) * std::log((e + 1.0) / (e - 1.0));
    p.alpha = ov.alpha ? *ov.alpha : std::min(1.0, 1.0 / (2.0 * L));
    p.rho0 = ov.rho0 ? *ov.rho0 : p.R;
    p.c_face = ov.c_face ? *ov.c_face : 4.0 * p.R + 2.0;
    if (!(p.alpha > 0.0 && p.alpha <= 1.0))
        throw std::invalid_argument("derive_params: alpha must lie in (0,1]");
    if (!(p.rho0 > 0.0) || !(p.c_face > 0.0))
        throw std::invalid_argument("derive_params: rho0 and c_face must be positive");
    return p;
}

// Hyperbolic distance between points at radii r1, r2 with angle theta between
// them (law of cosines). Uses the shorter angle and a cancellation-free form:
//   cosh d = cosh(r1-r2) + 2 sinh r1 sinh r2 sin^2(theta'/2).
inline double hyp_chord(double r1, double r2, double theta) {
    if (r1 < 0.0 || r2 < 0.0) throw std::invalid_argument("hyp_chord: negative radius");
    if (!(theta >= 0.0 && theta < 2.0 * kPi))
        throw std::invalid_argument("hyp_chord: angle must lie in [0, 2*pi)");
    const double tp = std::min(theta, 2.0 * kPi - theta);
    const double hd = std::sinh(0.5 * (r1 - r2));
    const double s = std::sin(0.5 * tp);
    const double u = 2.0 * hd * hd + 2.0 * std::sinh(r1) * std::sinh(r2) * s * s;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));  // arccosh(1+u)
}

enum class Sparsification { Dense, Dyadic };

// Weighted graph on one center node per vertex plus one node per corner,
// placed on the circle of radius R_v at the corner's orbit angle.
struct MetricGraph {
    std::int32_t node_count = 0;
    std::vector<std::int32_t> corner_node;  // per half-edge, -1 if excluded
    std::vector<std::int32_t> center_node;  // per vertex, -1 if excluded
    std::vector<double> disk_radius;        // per vertex (R_v), 0 if excluded

    // Node metadata (parallel arrays over node ids).
    std::vector<bool> is_center;
    std::vector<VertexId> node_vertex;
    std::vector<double> node_angle;  // corners only; 0 for centers

    // CSR adjacency.
    std::vector<std::int64_t> adj_offset;
    std::vector<std::int32_t> adj_to;
    std::vector<double> adj_weight;

    Sparsification mode = Sparsification::Dyadic;
    ModelParams params;

    std::int64_t edge_count() const { return static_cast<std::int64_t>(adj_to.size()) / 2; }
};

// Builds the model graph over the whole map, or over one component when
// `component` is >= 0.
inline MetricGraph build_graph(const Triangulation& t, const ModelParams& params,
                               Sparsification mode, std::int32_t component = -1) {
    MetricGraph g;
    g.mode = mode;
    g.params = params;
    g.corner_node.assign(t.half_edges(), -1);
    g.center_node.assign(t.vertex_count(), -1);
    g.disk_radius.assign(t.vertex_count(), 0.0);

    auto vertex_included = [&](VertexId v) {
        return component < 0 || t.component_of_vertex[v] == component;
    };

    std::int32_t next_node = 0;
    for (HalfEdgeId h = 0; h < t.half_edges(); ++h)
        if (vertex_included(t.vertex_of[h])) g.corner_node[h] = next_node++;
    for (VertexId v = 0; v < t.vertex_count(); ++v)
        if (vertex_included(v)) g.center_node[v] = next_node++;
    g.node_count = next_node;

    g.is_center.assign(g.node_count, false);
    g.node_vertex.assign(g.node_count, -1);
    g.node_angle.assign(g.node_count, 0.0);

    std::vector<std::int32_t> eu, ev;
    std::vector<double> ew;
    auto add_edge = [&](std::int32_t a, std::int32_t b, double w) {
        eu.push_back(a);
        ev.push_back(b);
        ew.push_back(w);
    };

    for (VertexId v = 0; v < t.vertex_count(); ++v) {
        if (!vertex_included(v)) continue;
        const std::int32_t deg = t.degree(v);
        const double rv = std::max(std::log(params.alpha * deg), params.rho0);
        g.disk_radius[v] = rv;
        const std::int32_t cn = g.center_node[v];
        g.is_center[cn] = true;
        g.node_vertex[cn] = v;

        for (std::int32_t k = 0; k < deg; ++k) {
            const std::int32_t node = g.corner_node[t.orbits[v][k]];
            g.node_vertex[node] = v;
            g.node_angle[node] = 2.0 * kPi * k / deg;
            add_edge(cn, node, rv);  // spoke
        }

        // Within-disk chords: all gaps (dense) or ring + dyadic gaps.
        std::vector<std::int32_t> gaps;
        if (mode == Sparsification::Dense) {
            for (std::int32_t gap = 1; gap <= deg / 2; ++gap) gaps.push_back(gap);
        } else {
            if (deg >= 2) gaps.push_back(1);
            for (std::int32_t gap = 2; gap < (deg + 1) / 2; gap *= 2) gaps.push_back(gap);
        }
        for (std::int32_t gap : gaps) {
            if (gap < 1 || gap > deg - gap) continue;
            const double w = hyp_chord(rv, rv, 2.0 * kPi * gap / deg);
            for (std::int32_t k = 0; k < deg; ++k) {
                const std::int32_t k2 = (k + gap) % deg;
                if (gap == deg - gap && k2 < k) continue;  // antipodal pairs once
                add_edge(g.corner_node[t.orbits[v][k]], g.corner_node[t.orbits[v][k2]], w);
            }
        }
    }

    // Cross-face triangles.
    for (std::int32_t f = 0; f < 2 * t.n(); ++f) {
        if (component >= 0 && t.component_of_triangle[f] != component) continue;
        for (int k = 0; k < 3; ++k) {
            const std::int32_t a = g.corner_node[3 * f + k];
            const std::int32_t b = g.corner_node[3 * f + (k + 1) % 3];
            add_edge(a, b, params.c_face);
        }
    }

    // Assemble CSR (undirected: both directions).
    std::vector<std::int32_t> degree_count(g.node_count, 0);
    for (std::size_t i = 0; i < eu.size(); ++i) {
        ++degree_count[eu[i]];
        ++degree_count[ev[i]];
    }
    g.adj_offset.assign(g.node_count + 1, 0);
    for (std::int32_t v = 0; v < g.node_count; ++v)
        g.adj_offset[v + 1] = g.adj_offset[v] + degree_count[v];
    g.adj_to.assign(eu.size() * 2, 0);
    g.adj_weight.assign(eu.size() * 2, 0.0);
    std::vector<std::int64_t> cursor(g.adj_offset.begin(), g.adj_offset.end() - 1);
    for (std::size_t i = 0; i < eu.size(); ++i) {
        g.adj_to[cursor[eu[i]]] = ev[i];
        g.adj_weight[cursor[eu[i]]++] = ew[i];
        g.adj_to[cursor[ev[i]]] = eu[i];
        g.adj_weight[cursor[ev[i]]++] = ew[i];
    }
    return g;
}

}  // namespace belyi
