#pragma once

#include "amcomp/geometry.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace amcomp {

/// Indexed triangle set in millimetres. Immutable by convention once built;
/// all queries are read-only and safe to run in parallel.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t triangle_count() const { return triangles.size(); }
    bool empty() const { return triangles.empty(); }

    const Vec3& corner(std::size_t tri, int k) const { return vertices[triangles[tri][k]]; }

    Vec3 triangle_normal(std::size_t tri) const {
        return amcomp::triangle_normal(corner(tri, 0), corner(tri, 1), corner(tri, 2));
    }
    double triangle_area(std::size_t tri) const {
        return amcomp::triangle_area(corner(tri, 0), corner(tri, 1), corner(tri, 2));
    }
    Vec3 point_at(std::size_t tri, const std::array<double, 3>& bary) const {
        return bary[0] * corner(tri, 0) + bary[1] * corner(tri, 1) + bary[2] * corner(tri, 2);
    }

    double total_area() const;
    /// Divergence-theorem volume; meaningful for closed meshes.
    double signed_volume() const;
    Aabb bounding_box() const;
    Vec3 centroid() const; // area-weighted surface centroid

    /// True when every edge is shared by exactly two triangles with opposite
    /// orientation and the signed volume is positive.
    bool is_closed() const;

    /// Checks index bounds and the no-degenerate-triangle invariant
    /// (area > 1e-12 mm^2). Throws Error on violation.
    void validate() const;
};

/// Builds an indexed mesh from a triangle soup: vertices within `weld_tol` are
/// merged (first occurrence wins, so ordering is deterministic) and degenerate
/// triangles are dropped. Returns the number of dropped triangles via out-param.
TriangleMesh mesh_from_soup(const std::vector<Vec3>& corners, double weld_tol,
                            std::size_t* dropped_degenerate = nullptr);

/// One point sampled on a mesh surface.
struct SurfaceSample {
    Vec3 position;
    Vec3 normal; // facet normal of the source triangle
    std::uint32_t triangle_index = 0;
    std::array<double, 3> barycentric{};
};

/// Area-weighted uniform surface sampling, deterministic for a fixed seed.
std::vector<SurfaceSample> sample_surface(const TriangleMesh& mesh, std::size_t count,
                                          std::uint64_t seed);

/// Applies `f: Vec3 -> Vec3` to every vertex, preserving topology.
template <class F>
TriangleMesh transform_mesh(const TriangleMesh& mesh, F&& f) {
    TriangleMesh out;
    out.vertices.reserve(mesh.vertices.size());
    for (const Vec3& v : mesh.vertices) out.vertices.push_back(f(v));
    out.triangles = mesh.triangles;
    return out;
}

} // namespace amcomp
