#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "belyi/explore.hpp"
#include "belyi/triangulation.hpp"

namespace belyi {

// Brute-force counterparts of the explorations: they scan the full
// triangulation for the claimed witnesses, independently of any peeling.

struct LargeWitnessReport {
    bool face_exists = false;    // some face incident to both vertices
    bool within_bounds = false;  // ... with both distances within 3*l_i
    std::int32_t best_face = -1;
    std::int32_t best_d1 = -1, best_d2 = -1;
    double l1 = 0.0, l2 = 0.0;
};

inline LargeWitnessReport oracle_check_large(const Triangulation& t, CornerRef c1, CornerRef c2,
                                             double epsilon) {
    const VertexId v1 = t.vertex_of[c1.half_edge], v2 = t.vertex_of[c2.half_edge];
    const double n = t.n();
    const double d1 = t.degree(v1), d2 = t.degree(v2);
    const double logn = std::log(n);
    const double b1 = std::log(d1) / logn, b2 = std::log(d2) / logn;
    const double denom = b1 + b2 - epsilon / 2.0;

    LargeWitnessReport rep;
    rep.l1 = std::pow(n, b1 / denom);
    rep.l2 = std::pow(n, b2 / denom);
    for (std::int32_t f = 0; f < 2 * t.n(); ++f) {
        std::int32_t dm1 = -1, dm2 = -1;
        for (int k = 0; k < 3; ++k) {
            HalfEdgeId x = 3 * f + k;
            if (t.vertex_of[x] == v1) {
                std::int32_t d = corner_distance(t, c1, {x});
                if (dm1 < 0 || d < dm1) dm1 = d;
            }
            if (t.vertex_of[x] == v2) {
                std::int32_t d = corner_distance(t, c2, {x});
                if (dm2 < 0 || d < dm2) dm2 = d;
            }
        }
        if (dm1 < 0 || dm2 < 0) continue;
        rep.face_exists = true;
        if (dm1 <= 3.0 * rep.l1 && dm2 <= 3.0 * rep.l2) rep.within_bounds = true;
        if (rep.best_face < 0 || dm1 + dm2 < rep.best_d1 + rep.best_d2) {
            rep.best_face = f;
            rep.best_d1 = dm1;
            rep.best_d2 = dm2;
        }
    }
    return rep;
}

struct SmallWitnessReport {
    bool shared_face_exists = false;
    std::int32_t shared_face = -1;
    bool witness_exists = false;  // some v' within the corner-distance bound
    VertexId best_vertex = -1;
    std::int32_t best_d = -1;
    double bound = 0.0;
};

inline SmallWitnessReport oracle_check_small(const Triangulation& t, VertexId v1, VertexId v2,
                                             double epsilon) {
    const double n = t.n();
    const double d1 = t.degree(v1), d2 = t.degree(v2);
    SmallWitnessReport rep;
    rep.bound = std::pow(n, 1.0 + 2.0 * epsilon) / (d1 * d2);

    std::vector<char> touches1(2 * t.n(), 0), touches2(2 * t.n(), 0);
    for (HalfEdgeId x : t.orbits[v1]) touches1[triangle_of(x)] = 1;
    for (HalfEdgeId x : t.orbits[v2]) touches2[triangle_of(x)] = 1;
    for (std::int32_t f = 0; f < 2 * t.n(); ++f)
        if (touches1[f] && touches2[f]) {
            rep.shared_face_exists = true;
            rep.shared_face = f;
            break;
        }

    for (VertexId vp = 0; vp < t.vertex_count(); ++vp) {
        if (vp == v1 || vp == v2) continue;
        // Orbit positions of v''s corners lying on faces shared with v1 / v2.
        std::vector<std::int32_t> p1, p2;
        for (HalfEdgeId x : t.orbits[vp]) {
            if (touches1[triangle_of(x)]) p1.push_back(t.orbit_pos[x]);
            if (touches2[triangle_of(x)]) p2.push_back(t.orbit_pos[x]);
        }
        if (p1.empty() || p2.empty()) continue;
        const std::int32_t deg = t.degree(vp);
        std::int32_t best = -1;
        for (std::int32_t a : p1)
            for (std::int32_t b : p2) {
                std::int32_t k = a - b;
                if (k < 0) k += deg;
                std::int32_t d = std::min(k, deg - k);
                if (best < 0 || d < best) best = d;
            }
        if (rep.best_vertex < 0 || best < rep.best_d) {
            rep.best_vertex = vp;
            rep.best_d = best;
        }
        if (best <= rep.bound) rep.witness_exists = true;
    }
    return rep;
}

struct TinyWitnessReport {
    double threshold = 0.0;  // n^(1/4)
    std::int32_t max_degree_within_6 = 0;
    VertexId best_vertex = -1;
    std::int32_t best_dist = -1;
    bool holds = false;
    std::vector<std::int32_t> dist;  // graph distance from v (-1 if beyond radius)
};

// Breadth-first search on the 1-skeleton of the triangulation to radius 6.
inline TinyWitnessReport oracle_check_tiny(const Triangulation& t, VertexId v) {
    TinyWitnessReport rep;
    rep.threshold = std::pow(static_cast<double>(t.n()), 0.25);

    std::vector<std::vector<VertexId>> adj(t.vertex_count());
    for (HalfEdgeId h = 0; h < t.half_edges(); ++h) {
        if (h < t.pairing.match[h]) {
            VertexId a = t.vertex_of[h], b = t.vertex_of[next_in_triangle(h)];
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }

    rep.dist.assign(t.vertex_count(), -1);
    std::queue<VertexId> q;
    rep.dist[v] = 0;
    q.push(v);
    while (!q.empty()) {
        VertexId u = q.front();
        q.pop();
        if (rep.dist[u] >= 6) continue;
        for (VertexId w : adj[u])
            if (rep.dist[w] < 0) {
                rep.dist[w] = rep.dist[u] + 1;
                q.push(w);
            }
    }
    for (VertexId w = 0; w < t.vertex_count(); ++w) {
        if (rep.dist[w] < 0 || rep.dist[w] > 6) continue;
        if (t.degree(w) > rep.max_degree_within_6) {
            rep.max_degree_within_6 = t.degree(w);
            rep.best_vertex = w;
            rep.best_dist = rep.dist[w];
        }
    }
    rep.holds = rep.max_degree_within_6 >= rep.threshold;
    return rep;
}

// Fraction of vertices with a degree >= n^(1/4) vertex within graph distance
// 6: one adjacency build, one BFS per vertex.
inline std::pair<std::int32_t, std::int32_t> tiny_coverage(const Triangulation& t) {
    const double threshold = std::pow(static_cast<double>(t.n()), 0.25);
    std::vector<std::vector<VertexId>> adj(t.vertex_count());
    for (HalfEdgeId h = 0; h < t.half_edges(); ++h) {
        if (h < t.pairing.match[h]) {
            VertexId a = t.vertex_of[h], b = t.vertex_of[next_in_triangle(h)];
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    std::int32_t holds = 0;
    std::vector<std::int32_t> dist(t.vertex_count());
    std::vector<VertexId> queue;
    for (VertexId v = 0; v < t.vertex_count(); ++v) {
        std::fill(dist.begin(), dist.end(), -1);
        queue.clear();
        dist[v] = 0;
        queue.push_back(v);
        bool found = t.degree(v) >= threshold;
        for (std::size_t qi = 0; qi < queue.size() && !found; ++qi) {
            VertexId u = queue[qi];
            if (dist[u] >= 6) continue;
            for (VertexId w : adj[u])
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    if (t.degree(w) >= threshold) {
                        found = true;
                        break;
                    }
                    queue.push_back(w);
                }
        }
        holds += found;
    }
    return {holds, t.vertex_count()};
}

// --- confirmation of exploration witnesses against the full map ---

inline bool oracle_confirms_large(const Triangulation& t, CornerRef c1, CornerRef c2,
                                  double epsilon, const ExplorationOutcome& out) {
    if (out.status != ExploreStatus::SuccessFaceWitness) return true;  // nothing claimed
    const VertexId v1 = t.vertex_of[c1.half_edge], v2 = t.vertex_of[c2.half_edge];
    LargeWitnessReport rep = oracle_check_large(t, c1, c2, epsilon);
    if (out.face < 0 || out.face >= 2 * t.n()) return false;
    if (triangle_of(out.face_corner1.half_edge) != out.face) return false;
    if (triangle_of(out.face_corner2.half_edge) != out.face) return false;
    if (t.vertex_of[out.face_corner1.half_edge] != v1) return false;
    if (t.vertex_of[out.face_corner2.half_edge] != v2) return false;
    if (corner_distance(t, c1, out.face_corner1) != out.dist1) return false;
    if (corner_distance(t, c2, out.face_corner2) != out.dist2) return false;
    if (out.dist1 > 3.0 * rep.l1 || out.dist2 > 3.0 * rep.l2) return false;
    return rep.within_bounds;  // the scan must find a bounded face too
}

inline bool oracle_confirms_small(const Triangulation& t, CornerRef c1, CornerRef c2,
                                  double epsilon, const ExplorationOutcome& out) {
    const VertexId v1 = t.vertex_of[c1.half_edge], v2 = t.vertex_of[c2.half_edge];
    auto face_touches = [&](std::int32_t f, VertexId v) {
        return t.vertex_of[3 * f] == v || t.vertex_of[3 * f + 1] == v ||
               t.vertex_of[3 * f + 2] == v;
    };
    if (out.status == ExploreStatus::SuccessFaceWitness) {
        return out.face >= 0 && face_touches(out.face, v1) && face_touches(out.face, v2);
    }
    if (out.status == ExploreStatus::SuccessWitness) {
        SmallWitnessReport rep = oracle_check_small(t, v1, v2, epsilon);
        const VertexId vp = out.vertex;
        if (vp < 0 || vp == v1 || vp == v2) return false;
        if (t.vertex_of[out.vcorner1.half_edge] != vp) return false;
        if (t.vertex_of[out.vcorner2.half_edge] != vp) return false;
        if (triangle_of(out.vcorner1.half_edge) != out.face1) return false;
        if (triangle_of(out.vcorner2.half_edge) != out.face2) return false;
        if (!face_touches(out.face1, v1) || !face_touches(out.face2, v2)) return false;
        std::int32_t d = corner_distance(t, out.vcorner1, out.vcorner2);
        if (d > out.vdist) return false;  // claimed distance must not understate
        return d <= rep.bound;
    }
    return true;  // other statuses carry no witness
}

inline bool oracle_confirms_tiny(const Triangulation& t, CornerRef c,
                                 const ExplorationOutcome& out) {
    if (out.status != ExploreStatus::SuccessWitness) return true;
    const VertexId v = t.vertex_of[c.half_edge];
    TinyWitnessReport rep = oracle_check_tiny(t, v);
    if (out.vertex < 0 || out.vertex >= t.vertex_count()) return false;
    if (t.degree(out.vertex) < rep.threshold) return false;
    if (t.degree(out.vertex) < out.corners_seen) return false;  // corners only accumulate
    return rep.dist[out.vertex] >= 0 && rep.dist[out.vertex] <= 6;
}

}  // namespace belyi
