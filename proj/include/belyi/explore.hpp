#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "belyi/peel_state.hpp"
#include "belyi/triangulation.hpp"

namespace belyi {

// A requested exploration is outside the degree regime of its proposition.
class PreconditionUnmet : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ExploreStatus {
    SuccessWitness,       // small: linking vertex v'; tiny: high-degree vertex near v
    SuccessFaceWitness,   // a face incident to both target vertices
    SuccessClosure,       // large: v1 or v2 closed within the step budget
    SuccessDisconnected,  // tiny: the component of v closed entirely
    DegreeMismatch,       // small: closure time outside [d/4, d]
    Fail,
};

inline const char* explore_status_name(ExploreStatus s) {
    switch (s) {
        case ExploreStatus::SuccessWitness: return "success-witness";
        case ExploreStatus::SuccessFaceWitness: return "success-face-witness";
        case ExploreStatus::SuccessClosure: return "success-closure";
        case ExploreStatus::SuccessDisconnected: return "success-disconnected";
        case ExploreStatus::DegreeMismatch: return "degree-mismatch";
        case ExploreStatus::Fail: return "fail";
    }
    return "?";
}

struct ExplorationOutcome {
    ExploreStatus status = ExploreStatus::Fail;
    std::int32_t steps_used = 0;

    // Face witness: face with a corner at each target vertex, and the orbit
    // distances from the start corners.
    std::int32_t face = -1;
    CornerRef face_corner1{}, face_corner2{};
    std::int32_t dist1 = -1, dist2 = -1;

    // Small-pair witness: vertex v' with faces f'1 (shared with v1) and f'2
    // (shared with v2), corners of v' on them, and the around-v' distance.
    // Tiny witness: vertex with its observed corner count and graph distance.
    VertexId vertex = -1;
    std::int32_t face1 = -1, face2 = -1;
    CornerRef vcorner1{}, vcorner2{};
    std::int32_t vdist = -1;
    std::int32_t corners_seen = 0;
    std::int32_t graph_dist = -1;

    VertexId closed_vertex = -1;
};

namespace detail {

// Corner of face `f` lying on vertex `v` minimizing the orbit distance
// from `from`; kNoHalfEdge if the face does not touch v.
inline HalfEdgeId closest_corner_of_face_at(const Triangulation& t, std::int32_t f, VertexId v,
                                            CornerRef from) {
    HalfEdgeId best = kNoHalfEdge;
    std::int32_t best_d = -1;
    for (int k = 0; k < 3; ++k) {
        HalfEdgeId x = 3 * f + k;
        if (t.vertex_of[x] != v) continue;
        std::int32_t d = corner_distance(t, from, {x});
        if (best == kNoHalfEdge || d < best_d) {
            best = x;
            best_d = d;
        }
    }
    return best;
}

}  // namespace detail

// Peeling around v1 for l1 steps, then around v2 for l2 steps, looking for a
// face touching both fans. Degrees are read from the full triangulation
// (replay conditioning).
inline ExplorationOutcome explore_pair_large(const Triangulation& t, CornerRef c1, CornerRef c2,
                                             double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("explore_pair_large: epsilon must lie in (0,1)");
    if (triangle_of(c1.half_edge) == triangle_of(c2.half_edge))
        throw std::invalid_argument("explore_pair_large: corners lie on the same triangle");
    const VertexId v1 = t.vertex_of[c1.half_edge], v2 = t.vertex_of[c2.half_edge];
    if (v1 == v2) throw std::invalid_argument("explore_pair_large: corners lie on the same vertex");
    const std::int32_t n = t.n();
    if (n < 2) throw std::invalid_argument("explore_pair_large: needs n >= 2");
    const double d1 = t.degree(v1), d2 = t.degree(v2);
    if (d1 * d2 < std::pow(n, 1.0 + epsilon))
        throw PreconditionUnmet("explore_pair_large: deg(v1)*deg(v2) < n^(1+eps)");

    const double logn = std::log(static_cast<double>(n));
    const double b1 = std::log(d1) / logn, b2 = std::log(d2) / logn;
    const double denom = b1 + b2 - epsilon / 2.0;
    const double el1 = std::pow(n, b1 / denom), el2 = std::pow(n, b2 / denom);
    const std::int32_t L1 = std::max<std::int32_t>(1, static_cast<std::int32_t>(el1));
    const std::int32_t L2 = std::max<std::int32_t>(1, static_cast<std::int32_t>(el2));

    PeelState st(n);
    ExplorationOutcome out;

    // Phase 1: around v1, stopping on closure or on contact with f2.
    for (std::int32_t i = 0; i < L1; ++i) {
        HalfEdgeId a = st.peel_edge_at(st.class_root(c1.half_edge));
        HalfEdgeId b = t.pairing.match[a];
        const bool hits_f2 = triangle_of(b) == triangle_of(c2.half_edge);
        st.glue(a, b);
        ++out.steps_used;
        if (hits_f2) {
            out.status = ExploreStatus::SuccessFaceWitness;
            out.face = triangle_of(c2.half_edge);
            out.face_corner1 = {next_in_triangle(b)};
            out.face_corner2 = c2;
            out.dist1 = corner_distance(t, c1, out.face_corner1);
            out.dist2 = 0;
            return out;
        }
        if (st.class_closed(st.class_root(c1.half_edge))) {
            out.status = ExploreStatus::SuccessClosure;
            out.closed_vertex = v1;
            return out;
        }
    }

    // Phase 2: around v2, stopping on closure or on contact with v1's fan.
    for (std::int32_t i = 0; i < L2; ++i) {
        HalfEdgeId a = st.peel_edge_at(st.class_root(c2.half_edge));
        HalfEdgeId b = t.pairing.match[a];
        const bool hits_comp1 =
            st.comp_root(triangle_of(b)) == st.comp_root(triangle_of(c1.half_edge));
        st.glue(a, b);
        ++out.steps_used;
        if (hits_comp1) {
            out.status = ExploreStatus::SuccessFaceWitness;
            out.face = triangle_of(b);
            HalfEdgeId x = detail::closest_corner_of_face_at(t, out.face, v1, c1);
            out.face_corner1 = {x};
            out.face_corner2 = {next_in_triangle(b)};
            out.dist1 = corner_distance(t, c1, out.face_corner1);
            out.dist2 = corner_distance(t, c2, out.face_corner2);
            return out;
        }
        if (st.class_closed(st.class_root(c2.half_edge))) {
            out.status = ExploreStatus::SuccessClosure;
            out.closed_vertex = v2;
            return out;
        }
    }

    out.status = ExploreStatus::Fail;
    return out;
}

struct SmallConditioning {
    std::optional<std::int32_t> d1, d2;
};

// Phase 1 closes v1, phase 2 closes v2, phase 3 rotates red/blue candidates
// on the boundary of v1's fan until the two components meet.
inline ExplorationOutcome explore_pair_small(const Triangulation& t, CornerRef c1, CornerRef c2,
                                             double epsilon, SmallConditioning cond = {}) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("explore_pair_small: epsilon must lie in (0,1)");
    if (triangle_of(c1.half_edge) == triangle_of(c2.half_edge))
        throw std::invalid_argument("explore_pair_small: corners lie on the same triangle");
    const VertexId v1 = t.vertex_of[c1.half_edge], v2 = t.vertex_of[c2.half_edge];
    if (v1 == v2) throw std::invalid_argument("explore_pair_small: corners lie on the same vertex");
    const std::int32_t n = t.n();
    if (n < 2) throw std::invalid_argument("explore_pair_small: needs n >= 2");
    const double d1 = cond.d1 ? *cond.d1 : t.degree(v1);
    const double d2 = cond.d2 ? *cond.d2 : t.degree(v2);
    if (d1 * d2 > std::pow(n, 1.0 + epsilon) || d1 < std::pow(n, 2.0 * epsilon) ||
        d2 < std::pow(n, 2.0 * epsilon))
        throw PreconditionUnmet("explore_pair_small: degrees outside the proposition regime");

    const double witness_bound = std::pow(n, 1.0 + 2.0 * epsilon) / (d1 * d2);
    const std::int32_t red_budget =
        static_cast<std::int32_t>(std::ceil(std::pow(n, 1.0 + epsilon) / (d1 * d2)));

    PeelState st(n);
    ExplorationOutcome out;
    // Faces of v1's phase-1 fan: every one of them is incident to v1.
    std::vector<char> in_fan1(2 * n, 0);
    in_fan1[triangle_of(c1.half_edge)] = 1;
    std::vector<HalfEdgeId> comp1_corners = {3 * triangle_of(c1.half_edge),
                                             3 * triangle_of(c1.half_edge) + 1,
                                             3 * triangle_of(c1.half_edge) + 2};

    // Phase 1: close v1.
    std::int32_t tau1 = -1;
    for (std::int32_t i = 1; i <= static_cast<std::int32_t>(d1); ++i) {
        HalfEdgeId a = st.peel_edge_at(st.class_root(c1.half_edge));
        HalfEdgeId b = t.pairing.match[a];
        const bool merges =
            st.comp_root(triangle_of(b)) == st.comp_root(triangle_of(c2.half_edge));
        GlueEvent ev = st.glue(a, b);
        ++out.steps_used;
        if (ev.component_merge && !merges) {
            in_fan1[triangle_of(b)] = 1;
            comp1_corners.push_back(3 * triangle_of(b));
            comp1_corners.push_back(3 * triangle_of(b) + 1);
            comp1_corners.push_back(3 * triangle_of(b) + 2);
        }
        if (merges) {
            out.status = ExploreStatus::SuccessFaceWitness;
            out.face = triangle_of(b);
            out.face_corner1 = {next_in_triangle(b)};
            out.face_corner2 = c2;
            out.dist1 = corner_distance(t, c1, out.face_corner1);
            out.dist2 = 0;
            return out;
        }
        if (st.class_closed(st.class_root(c1.half_edge))) {
            tau1 = i;
            break;
        }
    }
    if (tau1 < 0 || tau1 < d1 / 4.0) {
        out.status = ExploreStatus::DegreeMismatch;
        out.closed_vertex = v1;
        return out;
    }

    // Phase 2: close v2.
    std::int32_t tau2 = -1;
    for (std::int32_t i = 1; i <= static_cast<std::int32_t>(d2); ++i) {
        HalfEdgeId a = st.peel_edge_at(st.class_root(c2.half_edge));
        HalfEdgeId b = t.pairing.match[a];
        const bool merges =
            st.comp_root(triangle_of(b)) == st.comp_root(triangle_of(c1.half_edge));
        st.glue(a, b);
        ++out.steps_used;
        if (merges) {
            out.status = ExploreStatus::SuccessFaceWitness;
            out.face = triangle_of(b);
            HalfEdgeId x = detail::closest_corner_of_face_at(t, out.face, v1, c1);
            out.face_corner1 = {x};
            out.face_corner2 = {next_in_triangle(b)};
            out.dist1 = corner_distance(t, c1, out.face_corner1);
            out.dist2 = corner_distance(t, c2, out.face_corner2);
            return out;
        }
        if (st.class_closed(st.class_root(c2.half_edge))) {
            tau2 = i;
            break;
        }
    }
    if (tau2 < 0 || tau2 < d2 / 4.0) {
        out.status = ExploreStatus::DegreeMismatch;
        out.closed_vertex = v2;
        return out;
    }

    // Phase 3: colour the boundary vertices of v1's fan and rotate reds.
    std::vector<HalfEdgeId> blues;  // class representatives, ordered
    {
        std::vector<std::int32_t> roots;
        for (HalfEdgeId x : comp1_corners) {
            std::int32_t r = st.class_root(x);
            if (st.class_closed(r)) continue;
            roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        for (std::int32_t r : roots) blues.push_back(st.class_min_corner(r));
        std::sort(blues.begin(), blues.end());
        for (HalfEdgeId rep : blues) st.set_color(st.class_root(rep), Color::Blue);
    }

    std::size_t next_blue = 0;
    HalfEdgeId red_rep = kNoHalfEdge;
    std::int32_t red_since = 0;
    auto promote = [&]() -> bool {
        while (next_blue < blues.size()) {
            HalfEdgeId rep = blues[next_blue++];
            std::int32_t r = st.class_root(rep);
            if (!st.class_closed(r) && st.color(r) == Color::Blue) {
                st.set_color(r, Color::Red);
                red_rep = rep;
                red_since = 0;
                return true;
            }
        }
        return false;
    };
    if (!promote()) {
        out.status = ExploreStatus::Fail;
        return out;
    }

    while (!st.complete()) {
        std::int32_t red_root = st.class_root(red_rep);
        if (st.class_closed(red_root) || st.color(red_root) != Color::Red) {
            if (!promote()) break;
            red_root = st.class_root(red_rep);
        }
        HalfEdgeId a = st.peel_edge_at(red_root);
        HalfEdgeId b = t.pairing.match[a];
        const bool merges =
            st.comp_root(triangle_of(b)) == st.comp_root(triangle_of(c2.half_edge));

        std::vector<HalfEdgeId> chain;  // red corners on phase-1 fan faces, pre-glue
        if (merges) {
            HalfEdgeId cur = st.class_head(red_root);
            for (std::int32_t k = 0; k < st.class_size(red_root); ++k) {
                if (in_fan1[triangle_of(cur)]) chain.push_back(cur);
                if (k + 1 < st.class_size(red_root)) cur = next_in_triangle(st.partner(cur));
            }
        }

        GlueEvent ev = st.glue(a, b);
        ++out.steps_used;
        ++red_since;

        for (const auto& u : ev.unions) {
            if (u.closure) {
                st.set_color(u.new_root, Color::Black);
                continue;
            }
            const bool xc = u.x_color == Color::Blue || u.x_color == Color::Red;
            const bool yc = u.y_color == Color::Blue || u.y_color == Color::Red;
            Color nc;
            if (xc && yc)
                nc = Color::Black;
            else if (u.x_color == Color::Red || u.y_color == Color::Red)
                nc = Color::Red;
            else if (u.x_color == Color::Blue || u.y_color == Color::Blue)
                nc = Color::Black;
            else
                nc = std::max(u.x_color, u.y_color);
            st.set_color(u.new_root, nc);
        }

        if (merges) {
            const CornerRef c2prime{next_in_triangle(b)};
            HalfEdgeId best = kNoHalfEdge;
            std::int32_t best_d = -1;
            for (HalfEdgeId x : chain) {
                std::int32_t d = corner_distance(t, {x}, c2prime);
                if (best == kNoHalfEdge || d < best_d) {
                    best = x;
                    best_d = d;
                }
            }
            if (best != kNoHalfEdge && best_d <= witness_bound) {
                out.status = ExploreStatus::SuccessWitness;
                out.vertex = t.vertex_of[red_rep];
                out.face1 = triangle_of(best);
                out.face2 = triangle_of(b);
                out.vcorner1 = {best};
                out.vcorner2 = c2prime;
                out.vdist = best_d;
                out.corners_seen = st.class_size(st.class_root(red_rep));
                return out;
            }
            out.status = ExploreStatus::Fail;  // witness bound not met at this scale
            return out;
        }

        if (red_since >= red_budget) {
            std::int32_t r = st.class_root(red_rep);
            if (st.color(r) == Color::Red) st.set_color(r, Color::Black);
        }
    }

    out.status = ExploreStatus::Fail;
    return out;
}

// Rotates a red candidate vertex near v, looking for one that stays red for
// n^(1/4) consecutive steps; three closures mean failure.
inline ExplorationOutcome explore_tiny(const Triangulation& t, CornerRef c) {
    const std::int32_t n = t.n();
    if (c.half_edge < 0 || c.half_edge >= 6 * n)
        throw std::invalid_argument("explore_tiny: corner out of range");
    const std::int32_t K =
        std::max<std::int32_t>(1, static_cast<std::int32_t>(std::ceil(std::pow(n, 0.25))));

    PeelState st(n);
    ExplorationOutcome out;

    std::vector<std::pair<HalfEdgeId, HalfEdgeId>> skeleton_edges;  // corner reps
    std::vector<HalfEdgeId> comp_corners = {3 * triangle_of(c.half_edge),
                                            3 * triangle_of(c.half_edge) + 1,
                                            3 * triangle_of(c.half_edge) + 2};

    // Graph distances from v over the revealed 1-skeleton.
    auto bfs_dist = [&]() -> std::map<std::int32_t, std::int32_t> {
        std::map<std::int32_t, std::vector<std::int32_t>> adj;
        for (auto [x, y] : skeleton_edges) {
            std::int32_t rx = st.class_root(x), ry = st.class_root(y);
            adj[rx].push_back(ry);
            adj[ry].push_back(rx);
        }
        std::map<std::int32_t, std::int32_t> dist;
        std::queue<std::int32_t> q;
        std::int32_t src = st.class_root(c.half_edge);
        dist[src] = 0;
        q.push(src);
        while (!q.empty()) {
            std::int32_t u = q.front();
            q.pop();
            auto it = adj.find(u);
            if (it == adj.end()) continue;
            for (std::int32_t w : it->second)
                if (!dist.count(w)) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
        }
        return dist;
    };

    HalfEdgeId red_rep = c.half_edge;
    std::int32_t consec = 0, closures = 0;

    while (!st.complete()) {
        std::int32_t red_root = st.class_root(red_rep);
        HalfEdgeId a = st.peel_edge_at(red_root);
        HalfEdgeId b = t.pairing.match[a];
        GlueEvent ev = st.glue(a, b);
        ++out.steps_used;
        skeleton_edges.push_back({a, next_in_triangle(a)});
        if (ev.component_merge) {
            comp_corners.push_back(3 * triangle_of(b));
            comp_corners.push_back(3 * triangle_of(b) + 1);
            comp_corners.push_back(3 * triangle_of(b) + 2);
        }

        if (!ev.closed_roots.empty()) {
            ++closures;
            consec = 0;
        } else {
            ++consec;
        }

        if (st.comp_boundary_edges(st.comp_root(triangle_of(c.half_edge))) == 0) {
            out.status = ExploreStatus::SuccessDisconnected;
            return out;
        }
        if (consec >= K) {
            out.status = ExploreStatus::SuccessWitness;
            out.vertex = t.vertex_of[red_rep];
            out.corners_seen = st.class_size(st.class_root(red_rep));
            auto dist = bfs_dist();
            auto it = dist.find(st.class_root(red_rep));
            out.graph_dist = it == dist.end() ? -1 : it->second;
            return out;
        }
        if (closures >= 3) {
            out.status = ExploreStatus::Fail;
            return out;
        }

        if (st.class_closed(st.class_root(red_rep))) {
            auto dist = bfs_dist();
            std::int32_t best_d = -1;
            HalfEdgeId best_rep = kNoHalfEdge;
            std::vector<std::int32_t> roots;
            for (HalfEdgeId x : comp_corners) roots.push_back(st.class_root(x));
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            for (std::int32_t r : roots) {
                if (st.class_closed(r)) continue;
                auto it = dist.find(r);
                std::int32_t d = it == dist.end() ? std::numeric_limits<std::int32_t>::max() / 2
                                                  : it->second;
                HalfEdgeId rep = st.class_min_corner(r);
                if (best_rep == kNoHalfEdge || d < best_d || (d == best_d && rep < best_rep)) {
                    best_rep = rep;
                    best_d = d;
                }
            }
            if (best_rep == kNoHalfEdge) {
                // No temporary vertex left in v's component.
                out.status = ExploreStatus::SuccessDisconnected;
                return out;
            }
            red_rep = best_rep;
        }
    }

    out.status = ExploreStatus::Fail;
    return out;
}

inline ExplorationOutcome explore_pair_large(const Pairing& p, CornerRef c1, CornerRef c2,
                                             double epsilon) {
    return explore_pair_large(build_triangulation(p), c1, c2, epsilon);
}
inline ExplorationOutcome explore_pair_small(const Pairing& p, CornerRef c1, CornerRef c2,
                                             double epsilon, SmallConditioning cond = {}) {
    return explore_pair_small(build_triangulation(p), c1, c2, epsilon, cond);
}
inline ExplorationOutcome explore_tiny(const Pairing& p, CornerRef c) {
    return explore_tiny(build_triangulation(p), c);
}

}  // namespace belyi
