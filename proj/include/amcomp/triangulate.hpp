#pragma once

#include "amcomp/geometry.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace amcomp {

/// Planar region bounded by one CCW outer loop and zero or more CW hole loops.
struct PolygonWithHoles {
    std::vector<Vec2> outer;
    std::vector<std::vector<Vec2>> holes;
};

/// Twice the signed area of the triangle (a, b, c); positive for a CCW turn.
inline double cross2(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

double polygon_signed_area(const std::vector<Vec2>& loop);

/// Even-odd point-in-polygon test; boundary points are unspecified.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& loop);

/// True when closed loops a and b have intersecting or touching edges
/// (within tol).
bool loops_intersect(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double tol);

/// True when the closed loop has a proper self-intersection between
/// non-adjacent edges.
bool loop_self_intersects(const std::vector<Vec2>& loop, double tol);

/// Ear-clipping triangulation of a polygon with holes. Hole loops are bridged
/// into the outer loop, then the resulting ring is clipped. Returned triangles
/// are CCW and index the concatenation [outer points..., hole 0 points..., ...].
/// Throws InvalidGeometry when no ear can be clipped (degenerate input).
std::vector<std::array<std::uint32_t, 3>> triangulate_with_holes(const PolygonWithHoles& region);

} // namespace amcomp
