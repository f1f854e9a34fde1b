#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "belyi/half_edge.hpp"
#include "belyi/pairing.hpp"
#include "belyi/rng.hpp"
#include "belyi/union_find.hpp"

namespace belyi {

// Vertex colors used by the small-pair exploration (phase 3).
enum class Color : std::uint8_t { None = 0, Blue = 1, Red = 2, Black = 3 };

enum class GlueCase : std::uint8_t {
    SameHoleAdjacent,  // peeled edge glued to a neighbour along its hole
    SameHoleSplit,     // same hole, non-adjacent: the hole splits in two
    CrossHoleMerge,    // two holes merge (or a loop is absorbed)
    LoopToLoop,        // two perimeter-1 holes glued shut
};

struct GlueEvent {
    std::int32_t step = 0;  // index i of the transition S_i -> S_{i+1}
    HalfEdgeId a = kNoHalfEdge;
    HalfEdgeId b = kNoHalfEdge;
    GlueCase tag = GlueCase::CrossHoleMerge;
    std::int32_t boundary_after = 0;  // 6n - 2(i+1)

    // The <=2 corner-class identifications performed by this glue. A trivial
    // union (both corners already in one class) closes that vertex.
    struct UnionRec {
        std::int32_t x_pre = -1;  // class root of the tail-side corner, before
        std::int32_t y_pre = -1;  // class root of the head-side corner, before
        Color x_color = Color::None;
        Color y_color = Color::None;
        std::int32_t new_root = -1;
        bool closure = false;
    };
    std::vector<UnionRec> unions;
    std::vector<std::int32_t> closed_roots;  // class roots that became true vertices

    bool component_merge = false;
    std::int32_t comp_a_pre = -1, comp_b_pre = -1, comp_root = -1;
};

// Partially glued surface S_i: the 2n triangles with i side pairs identified.
// Holes are the cycles of unmatched sides; temporary vertices are the corner
// classes still touching a hole. Each temporary class is one open chain of
// corners, so its boundary contact is exactly one outgoing unmatched side
// (the side of its chain tail) and one incoming one.
class PeelState {
public:
    explicit PeelState(std::int32_t n)
        : n_(n),
          cls_(n >= 1 ? 6 * n : 1),
          comp_(n >= 1 ? 2 * n : 1) {
        if (n < 1) throw std::invalid_argument("PeelState: n must be >= 1");
        const std::int32_t m = 6 * n;
        partner_.assign(m, kNoHalfEdge);
        hnext_.resize(m);
        hprev_.resize(m);
        hole_of_.resize(m);
        closed_.assign(m, false);
        cls_size_.assign(m, 1);
        cls_min_.resize(m);
        head_.resize(m);
        tail_.resize(m);
        color_.assign(m, Color::None);
        pool_.resize(m);
        pool_pos_.resize(m);
        for (HalfEdgeId h = 0; h < m; ++h) {
            hnext_[h] = next_in_triangle(h);
            hprev_[h] = prev_in_triangle(h);
            hole_of_[h] = triangle_of(h);
            cls_min_[h] = h;
            head_[h] = h;
            tail_[h] = h;
            pool_[h] = h;
            pool_pos_[h] = h;
        }
        holes_.resize(2 * n);
        for (std::int32_t t = 0; t < 2 * n; ++t) holes_[t] = {3, true, 3 * t};
        alive_holes_ = 2 * n;
        comp_boundary_.assign(2 * n, 3);
        comp_temp_.assign(2 * n, 3);
        comp_true_.assign(2 * n, 0);
        comp_faces_.assign(2 * n, 1);
    }

    std::int32_t n() const { return n_; }
    std::int32_t step() const { return steps_; }
    std::int32_t boundary_total() const { return 6 * n_ - 2 * steps_; }
    bool complete() const { return steps_ == 3 * n_; }

    bool is_matched(HalfEdgeId h) const { return partner_[h] != kNoHalfEdge; }
    HalfEdgeId partner(HalfEdgeId h) const { return partner_[h]; }

    // --- corner classes (temporary / true vertices) ---

    std::int32_t class_root(HalfEdgeId corner) const { return cls_.find(corner); }
    bool class_closed(std::int32_t root) const { return closed_[root]; }
    std::int32_t class_size(std::int32_t root) const { return cls_size_[root]; }
    HalfEdgeId class_min_corner(std::int32_t root) const { return cls_min_[root]; }
    HalfEdgeId class_head(std::int32_t root) const { return head_[root]; }
    HalfEdgeId class_tail(std::int32_t root) const { return tail_[root]; }

    Color color(std::int32_t root) const { return color_[root]; }
    void set_color(std::int32_t root, Color c) { color_[root] = c; }

    // The unique unmatched side whose origin lies on this temporary vertex:
    // the edge to peel when exploring around it.
    HalfEdgeId peel_edge_at(std::int32_t root) const {
        if (closed_[root]) throw std::logic_error("peel_edge_at: vertex is already closed");
        return tail_[root];
    }

    // --- components (union of triangles along glued edges) ---

    std::int32_t comp_root(std::int32_t tri) const { return comp_.find(tri); }
    std::int32_t comp_of_corner(HalfEdgeId corner) const { return comp_.find(triangle_of(corner)); }
    std::int32_t comp_boundary_edges(std::int32_t root) const { return comp_boundary_[root]; }
    std::int32_t comp_temp_vertices(std::int32_t root) const { return comp_temp_[root]; }
    std::int32_t comp_true_vertices(std::int32_t root) const { return comp_true_[root]; }
    std::int32_t comp_faces(std::int32_t root) const { return comp_faces_[root]; }

    // --- holes ---

    std::int32_t alive_holes() const { return alive_holes_; }
    std::int32_t loop_holes() const { return loop_holes_; }  // the L_i counter
    std::int32_t hole_of(HalfEdgeId h) const { return hole_of_[h]; }
    std::int32_t hole_perimeter(std::int32_t hole) const { return holes_[hole].perimeter; }
    HalfEdgeId hole_next(HalfEdgeId h) const { return hnext_[h]; }
    HalfEdgeId hole_prev(HalfEdgeId h) const { return hprev_[h]; }

    std::vector<std::int32_t> alive_hole_ids() const {
        std::vector<std::int32_t> ids;
        for (std::int32_t i = 0; i < static_cast<std::int32_t>(holes_.size()); ++i)
            if (holes_[i].alive) ids.push_back(i);
        return ids;
    }

    std::vector<HalfEdgeId> hole_edges(std::int32_t hole) const {
        std::vector<HalfEdgeId> out;
        HalfEdgeId start = holes_[hole].any_edge;
        HalfEdgeId cur = start;
        do {
            out.push_back(cur);
            cur = hnext_[cur];
        } while (cur != start);
        return out;
    }

    std::int32_t closures_total() const { return closures_total_; }

    // Unmatched half-edges in internal pool order (deterministic).
    std::int32_t unmatched_count() const { return static_cast<std::int32_t>(pool_.size()); }
    HalfEdgeId unmatched_at(std::int32_t i) const { return pool_[i]; }

    // Uniform choice among the unmatched half-edges other than a.
    HalfEdgeId random_partner(HalfEdgeId a, Rng& rng) const {
        if (is_matched(a)) throw std::logic_error("random_partner: half-edge is already matched");
        const std::size_t size = pool_.size();
        if (size < 2) throw std::logic_error("random_partner: no other unmatched half-edge");
        std::uint64_t j = rng.uniform_below(size - 1);
        if (j >= static_cast<std::uint64_t>(pool_pos_[a])) ++j;
        return pool_[j];
    }

    // Identify sides a and b (orientation-reversing): origin(a)~term(b) and
    // term(a)~origin(b). Returns the full event record.
    GlueEvent glue(HalfEdgeId a, HalfEdgeId b) {
        if (a == b) throw std::invalid_argument("glue: cannot glue a half-edge to itself");
        if (a < 0 || b < 0 || a >= 6 * n_ || b >= 6 * n_)
            throw std::invalid_argument("glue: half-edge out of range");
        if (is_matched(a) || is_matched(b))
            throw std::invalid_argument("glue: half-edge already matched");

        GlueEvent ev;
        ev.step = steps_;
        ev.a = a;
        ev.b = b;

        const HalfEdgeId an = hnext_[a], ap = hprev_[a];
        const HalfEdgeId bn = hnext_[b], bp = hprev_[b];
        const std::int32_t ha = hole_of_[a], hb = hole_of_[b];
        const bool same_hole = (ha == hb);

        if (same_hole && (an == b || bn == a))
            ev.tag = GlueCase::SameHoleAdjacent;
        else if (same_hole)
            ev.tag = GlueCase::SameHoleSplit;
        else if (holes_[ha].perimeter == 1 && holes_[hb].perimeter == 1)
            ev.tag = GlueCase::LoopToLoop;
        else
            ev.tag = GlueCase::CrossHoleMerge;

        // Components first, so per-component counters land on one root.
        {
            std::int32_t ra = comp_.find(triangle_of(a)), rb = comp_.find(triangle_of(b));
            if (ra != rb) {
                auto m = comp_.unite(ra, rb);
                comp_boundary_[m.root] += comp_boundary_[m.absorbed];
                comp_temp_[m.root] += comp_temp_[m.absorbed];
                comp_true_[m.root] += comp_true_[m.absorbed];
                comp_faces_[m.root] += comp_faces_[m.absorbed];
                ev.component_merge = true;
                ev.comp_a_pre = ra;
                ev.comp_b_pre = rb;
                ev.comp_root = m.root;
            }
        }
        const std::int32_t croot = comp_.find(triangle_of(a));
        comp_boundary_[croot] -= 2;

        partner_[a] = b;
        partner_[b] = a;
        pool_remove(a);
        pool_remove(b);

        // Matching side a creates the chain edge corner(a) -> corner(next(b));
        // matching side b creates corner(b) -> corner(next(a)).
        unite_corners(a, next_in_triangle(b), croot, ev);
        unite_corners(b, next_in_triangle(a), croot, ev);

        // Hole surgery.
        if (same_hole && an == b && bn == a) {
            kill_hole(ha);
        } else if (same_hole && an == b) {
            link(ap, bn);
            shrink_hole(ha, 2, bn);
        } else if (same_hole && bn == a) {
            link(bp, an);
            shrink_hole(ha, 2, an);
        } else if (same_hole) {
            split_hole(ha, an, ap, bn, bp);
        } else {
            const std::int32_t pa = holes_[ha].perimeter, pb = holes_[hb].perimeter;
            if (pa == 1 && pb == 1) {
                kill_hole(ha);
                kill_hole(hb);
            } else if (pa == 1) {
                kill_hole(ha);
                link(bp, bn);
                shrink_hole(hb, 1, bn);
            } else if (pb == 1) {
                kill_hole(hb);
                link(ap, an);
                shrink_hole(ha, 1, an);
            } else {
                link(ap, bn);
                link(bp, an);
                merge_holes(ha, hb, an, bn);
            }
        }

        ++steps_;
        ev.boundary_after = 6 * n_ - 2 * steps_;
        return ev;
    }

    // The matching accumulated so far; a full Pairing once complete() holds.
    Pairing extract_pairing() const {
        if (!complete()) throw std::logic_error("extract_pairing: gluing not complete");
        Pairing p;
        p.n = n_;
        p.match = partner_;
        return p;
    }

private:
    struct HoleInfo {
        std::int32_t perimeter = 0;
        bool alive = false;
        HalfEdgeId any_edge = kNoHalfEdge;
    };

    void pool_remove(HalfEdgeId h) {
        std::int32_t i = pool_pos_[h];
        HalfEdgeId last = pool_.back();
        pool_[i] = last;
        pool_pos_[last] = i;
        pool_.pop_back();
    }

    void link(HalfEdgeId u, HalfEdgeId v) {
        hnext_[u] = v;
        hprev_[v] = u;
    }

    void unite_corners(HalfEdgeId tail_corner, HalfEdgeId head_corner, std::int32_t croot,
                       GlueEvent& ev) {
        std::int32_t rx = cls_.find(tail_corner), ry = cls_.find(head_corner);
        GlueEvent::UnionRec rec;
        rec.x_pre = rx;
        rec.y_pre = ry;
        rec.x_color = color_[rx];
        rec.y_color = color_[ry];
        if (rx == ry) {
            // Chain closes into a cycle: a true vertex of the final map.
            closed_[rx] = true;
            rec.new_root = rx;
            rec.closure = true;
            ev.closed_roots.push_back(rx);
            comp_temp_[croot] -= 1;
            comp_true_[croot] += 1;
            ++closures_total_;
        } else {
            const HalfEdgeId new_head = head_[rx];
            const HalfEdgeId new_tail = tail_[ry];
            auto m = cls_.unite(rx, ry);
            cls_size_[m.root] += cls_size_[m.absorbed];
            cls_min_[m.root] = std::min(cls_min_[rx], cls_min_[ry]);
            color_[m.root] = std::max(color_[rx], color_[ry]);  // baseline; explorations override
            head_[m.root] = new_head;
            tail_[m.root] = new_tail;
            comp_temp_[croot] -= 1;
            rec.new_root = m.root;
        }
        ev.unions.push_back(rec);
    }

    void kill_hole(std::int32_t h) {
        if (holes_[h].perimeter == 1) --loop_holes_;
        holes_[h].alive = false;
        --alive_holes_;
    }

    void shrink_hole(std::int32_t h, std::int32_t by, HalfEdgeId surviving_edge) {
        holes_[h].perimeter -= by;
        holes_[h].any_edge = surviving_edge;
        if (holes_[h].perimeter == 1) ++loop_holes_;
    }

    void split_hole(std::int32_t h, HalfEdgeId an, HalfEdgeId ap, HalfEdgeId bn, HalfEdgeId bp) {
        link(bp, an);
        link(ap, bn);
        // Find the smaller fragment by walking both cycles in lockstep.
        std::int32_t su = 1, sv = 1;
        HalfEdgeId cu = an, cv = bn;
        bool first_smaller;
        for (;;) {
            cu = hnext_[cu];
            if (cu == an) {
                first_smaller = true;
                break;
            }
            ++su;
            cv = hnext_[cv];
            if (cv == bn) {
                first_smaller = false;
                break;
            }
            ++sv;
        }
        const std::int32_t total = holes_[h].perimeter - 2;
        const std::int32_t small_size = first_smaller ? su : sv;
        const HalfEdgeId small_start = first_smaller ? an : bn;
        const HalfEdgeId big_start = first_smaller ? bn : an;
        const std::int32_t new_id = static_cast<std::int32_t>(holes_.size());
        holes_.push_back({small_size, true, small_start});
        ++alive_holes_;
        HalfEdgeId cur = small_start;
        for (std::int32_t k = 0; k < small_size; ++k) {
            hole_of_[cur] = new_id;
            cur = hnext_[cur];
        }
        holes_[h].perimeter = total - small_size;
        holes_[h].any_edge = big_start;
        if (holes_[h].perimeter == 1) ++loop_holes_;
        if (small_size == 1) ++loop_holes_;
    }

    void merge_holes(std::int32_t ha, std::int32_t hb, HalfEdgeId an, HalfEdgeId bn) {
        const std::int32_t pa = holes_[ha].perimeter, pb = holes_[hb].perimeter;
        std::int32_t keep = ha, drop = hb;
        HalfEdgeId drop_start = bn;
        std::int32_t drop_count = pb - 1;
        if (pb > pa) {
            keep = hb;
            drop = ha;
            drop_start = an;
            drop_count = pa - 1;
        }
        HalfEdgeId cur = drop_start;
        for (std::int32_t k = 0; k < drop_count; ++k) {
            hole_of_[cur] = keep;
            cur = hnext_[cur];
        }
        holes_[drop].alive = false;
        --alive_holes_;
        holes_[keep].perimeter = pa + pb - 2;
        holes_[keep].any_edge = an;
    }

    std::int32_t n_ = 0;
    std::int32_t steps_ = 0;
    std::vector<HalfEdgeId> partner_;
    std::vector<HalfEdgeId> hnext_, hprev_;
    std::vector<std::int32_t> hole_of_;
    std::vector<HoleInfo> holes_;
    std::int32_t alive_holes_ = 0;
    std::int32_t loop_holes_ = 0;

    UnionFind cls_;
    std::vector<bool> closed_;
    std::vector<std::int32_t> cls_size_;
    std::vector<HalfEdgeId> cls_min_, head_, tail_;
    std::vector<Color> color_;

    UnionFind comp_;
    std::vector<std::int32_t> comp_boundary_, comp_temp_, comp_true_, comp_faces_;
    std::int32_t closures_total_ = 0;

    std::vector<HalfEdgeId> pool_;
    std::vector<std::int32_t> pool_pos_;
};

inline PeelState init_state(std::int32_t n) { return PeelState(n); }

}  // namespace belyi
