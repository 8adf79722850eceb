#pragma once

#include "amcomp/mesh.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace amcomp {

struct ProjectionResult {
    Vec3 closest_point;
    double signed_distance = 0.0;
    std::uint32_t triangle_index = 0;
    std::array<double, 3> barycentric{};
};

/// Axis-aligned bounding-box tree over mesh triangles. Immutable after
/// construction; nearest-point queries match a brute-force scan exactly,
/// including the lowest-triangle-index tie break.
class Bvh {
public:
    Bvh() = default;
    explicit Bvh(const TriangleMesh& mesh) { build(mesh); }

    void build(const TriangleMesh& mesh);
    bool empty() const { return nodes_.empty(); }

    /// Closest point on the mesh. The distance sign is positive when the
    /// offset vector agrees with the nearest triangle's outward normal.
    /// Note: near open boundaries the sign is unreliable (within roughly one
    /// edge length), since the nearest facet normal may not separate space.
    ProjectionResult project(const TriangleMesh& mesh, const Vec3& point) const;

    struct Node {
        Aabb box;
        std::int32_t left = -1;   // child node index, -1 for leaves
        std::int32_t right = -1;
        std::uint32_t first = 0;  // leaf: range into triangle_order_
        std::uint32_t count = 0;
    };
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<std::uint32_t>& triangle_order() const { return triangle_order_; }

private:
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> triangle_order_;

    std::int32_t build_recursive(const TriangleMesh& mesh, std::uint32_t first,
                                 std::uint32_t count, const std::vector<Vec3>& centroids);
};

/// Brute-force reference for project(); used by tests and as a fallback.
ProjectionResult project_point_brute_force(const TriangleMesh& mesh, const Vec3& point);

/// Convenience wrapper matching the module interface.
inline ProjectionResult project_point(const TriangleMesh& mesh, const Bvh& bvh, const Vec3& point) {
    return bvh.project(mesh, point);
}

} // namespace amcomp
