#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "belyi/half_edge.hpp"
#include "belyi/pairing.hpp"
#include "belyi/union_find.hpp"

namespace belyi {

// Topology of one connected component of the glued surface.
struct ComponentTopology {
    std::int32_t vertices = 0;
    std::int32_t edges = 0;
    std::int32_t faces = 0;  // number of triangles
    std::int32_t genus = 0;
};

// A pairing together with its derived topology. Vertices are the orbits of
// h -> next(match[h]); the orbit order is the cyclic order of the corners
// around the vertex.
struct Triangulation {
    Pairing pairing;

    std::vector<std::vector<HalfEdgeId>> orbits;  // per vertex, cyclic corner order
    std::vector<VertexId> vertex_of;              // half-edge/corner -> vertex
    std::vector<std::int32_t> orbit_pos;          // position of a corner inside its orbit
    std::vector<std::int32_t> component_of_triangle;
    std::vector<std::int32_t> component_of_vertex;
    std::vector<ComponentTopology> components;

    std::int32_t n() const { return pairing.n; }
    std::int32_t half_edges() const { return pairing.half_edges(); }
    std::int32_t vertex_count() const { return static_cast<std::int32_t>(orbits.size()); }
    std::int32_t degree(VertexId v) const { return static_cast<std::int32_t>(orbits[v].size()); }
    bool connected() const { return components.size() == 1; }

    VertexId vertex_of_corner(CornerRef c) const { return vertex_of[c.half_edge]; }
};

inline Triangulation build_triangulation(const Pairing& pairing) {
    if (!pairing.is_valid())
        throw std::invalid_argument("build_triangulation: pairing is not a fixed-point-free involution");
    const std::int32_t m = pairing.half_edges();

    Triangulation t;
    t.pairing = pairing;
    t.vertex_of.assign(m, -1);
    t.orbit_pos.assign(m, -1);

    // Vertex orbits of h -> next(match[h]).
    for (HalfEdgeId h = 0; h < m; ++h) {
        if (t.vertex_of[h] != -1) continue;
        const VertexId v = static_cast<VertexId>(t.orbits.size());
        t.orbits.emplace_back();
        HalfEdgeId cur = h;
        do {
            t.vertex_of[cur] = v;
            t.orbit_pos[cur] = static_cast<std::int32_t>(t.orbits[v].size());
            t.orbits[v].push_back(cur);
            cur = next_in_triangle(pairing.match[cur]);
        } while (cur != h);
    }

    // Components: triangles joined whenever a glued edge connects them.
    const std::int32_t faces = 2 * pairing.n;
    UnionFind uf(faces);
    for (HalfEdgeId h = 0; h < m; ++h)
        if (h < pairing.match[h]) uf.unite(triangle_of(h), triangle_of(pairing.match[h]));

    std::vector<std::int32_t> comp_index(faces, -1);
    t.component_of_triangle.assign(faces, -1);
    for (std::int32_t f = 0; f < faces; ++f) {
        std::int32_t r = uf.find(f);
        if (comp_index[r] == -1) {
            comp_index[r] = static_cast<std::int32_t>(t.components.size());
            t.components.emplace_back();
        }
        t.component_of_triangle[f] = comp_index[r];
        t.components[comp_index[r]].faces += 1;
    }

    t.component_of_vertex.assign(t.orbits.size(), -1);
    for (VertexId v = 0; v < t.vertex_count(); ++v) {
        std::int32_t c = t.component_of_triangle[triangle_of(t.orbits[v][0])];
        t.component_of_vertex[v] = c;
        t.components[c].vertices += 1;
    }

    for (auto& comp : t.components) {
        comp.edges = 3 * comp.faces / 2;
        const std::int32_t chi = comp.vertices - comp.edges + comp.faces;
        if (chi > 2 || (2 - chi) % 2 != 0)
            throw std::logic_error("build_triangulation: non-integer or negative genus");
        comp.genus = (2 - chi) / 2;
    }
    return t;
}

// (vertex, degree, corner cycle) for every vertex; the cycle order is the
// orbit order, i.e. the order of the horocycle segments around the cusp.
struct VertexDatum {
    VertexId vertex;
    std::int32_t degree;
    const std::vector<HalfEdgeId>* corners;
};

inline std::vector<VertexDatum> vertex_data(const Triangulation& t) {
    std::vector<VertexDatum> out;
    out.reserve(t.vertex_count());
    for (VertexId v = 0; v < t.vertex_count(); ++v)
        out.push_back({v, t.degree(v), &t.orbits[v]});
    return out;
}

// Around-the-vertex distance between two corners of the same vertex: the
// number of orbit steps in the shorter direction.
inline std::int32_t corner_distance(const Triangulation& t, CornerRef c1, CornerRef c2) {
    const VertexId v1 = t.vertex_of[c1.half_edge];
    const VertexId v2 = t.vertex_of[c2.half_edge];
    if (v1 != v2) throw std::invalid_argument("corner_distance: corners lie on different vertices");
    const std::int32_t d = t.degree(v1);
    std::int32_t k = t.orbit_pos[c2.half_edge] - t.orbit_pos[c1.half_edge];
    if (k < 0) k += d;
    return std::min(k, d - k);
}

}  // namespace belyi
