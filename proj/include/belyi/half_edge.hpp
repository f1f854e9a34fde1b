#pragma once

#include <cstdint>

namespace belyi {

// Half-edges of a gluing of 2n oriented triangles are the integers [0, 6n).
// Triangle t owns half-edges {3t, 3t+1, 3t+2}; side h runs counterclockwise
// from corner h to corner next(h). A corner is identified with the half-edge
// that starts at it.
using HalfEdgeId = std::int32_t;
using VertexId = std::int32_t;

inline constexpr HalfEdgeId kNoHalfEdge = -1;

inline constexpr std::int32_t triangle_of(HalfEdgeId h) { return h / 3; }

inline constexpr HalfEdgeId next_in_triangle(HalfEdgeId h) {
    return 3 * (h / 3) + (h + 1) % 3;
}

inline constexpr HalfEdgeId prev_in_triangle(HalfEdgeId h) {
    return 3 * (h / 3) + (h + 2) % 3;
}

// The corner of triangle_of(h) at the origin vertex of h.
struct CornerRef {
    HalfEdgeId half_edge = kNoHalfEdge;

    friend bool operator==(CornerRef a, CornerRef b) = default;
};

}  // namespace belyi
