#include "amcomp/bvh.hpp"

#include "amcomp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace amcomp {

namespace {

constexpr std::uint32_t kLeafSize = 4;

struct Best {
    double dist2 = std::numeric_limits<double>::max();
    std::uint32_t tri = 0;
    Vec3 point = Vec3::Zero();
    std::array<double, 3> bary{};

    // Strictly-better distance wins; on exact ties the lowest triangle index
    // wins, matching the brute-force scan order.
    bool consider(double d2, std::uint32_t t, const Vec3& p, const std::array<double, 3>& b) {
        if (d2 < dist2 || (d2 == dist2 && t < tri)) {
            dist2 = d2;
            tri = t;
            point = p;
            bary = b;
            return true;
        }
        return false;
    }
};

ProjectionResult finish(const TriangleMesh& mesh, const Vec3& query, const Best& best) {
    ProjectionResult r;
    r.closest_point = best.point;
    r.triangle_index = best.tri;
    r.barycentric = best.bary;
    double d = std::sqrt(best.dist2);
    Vec3 offset = query - best.point;
    r.signed_distance = offset.dot(mesh.triangle_normal(best.tri)) >= 0.0 ? d : -d;
    return r;
}

} // namespace

void Bvh::build(const TriangleMesh& mesh) {
    nodes_.clear();
    triangle_order_.clear();
    if (mesh.empty()) return;

    std::vector<Vec3> centroids(mesh.triangle_count());
    triangle_order_.resize(mesh.triangle_count());
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        triangle_order_[t] = static_cast<std::uint32_t>(t);
        centroids[t] = (mesh.corner(t, 0) + mesh.corner(t, 1) + mesh.corner(t, 2)) / 3.0;
    }
    nodes_.reserve(2 * mesh.triangle_count());
    build_recursive(mesh, 0, static_cast<std::uint32_t>(mesh.triangle_count()), centroids);
}

std::int32_t Bvh::build_recursive(const TriangleMesh& mesh, std::uint32_t first,
                                  std::uint32_t count, const std::vector<Vec3>& centroids) {
    std::int32_t index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();

    Aabb box;
    for (std::uint32_t i = first; i < first + count; ++i) {
        std::uint32_t t = triangle_order_[i];
        for (int k = 0; k < 3; ++k) box.expand(mesh.corner(t, k));
    }
    nodes_[index].box = box;

    if (count <= kLeafSize) {
        nodes_[index].first = first;
        nodes_[index].count = count;
        // keep triangle indices ascending inside a leaf for deterministic ties
        std::sort(triangle_order_.begin() + first, triangle_order_.begin() + first + count);
        return index;
    }

    Vec3 extent = box.extent();
    int axis = 0;
    if (extent.y() > extent.x()) axis = 1;
    if (extent.z() > extent[axis]) axis = 2;

    std::uint32_t mid = first + count / 2;
    std::nth_element(triangle_order_.begin() + first, triangle_order_.begin() + mid,
                     triangle_order_.begin() + first + count,
                     [&](std::uint32_t a, std::uint32_t b) {
                         if (centroids[a][axis] != centroids[b][axis])
                             return centroids[a][axis] < centroids[b][axis];
                         return a < b;
                     });

    std::int32_t left = build_recursive(mesh, first, mid - first, centroids);
    std::int32_t right = build_recursive(mesh, mid, first + count - mid, centroids);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
}

ProjectionResult Bvh::project(const TriangleMesh& mesh, const Vec3& point) const {
    if (empty()) throw EmptyGeometry("BVH is empty");

    Best best;
    // Explicit stack; visit nearer child first, prune only strictly farther
    // boxes so equal-distance ties can still surface a lower triangle index.
    std::int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (node.box.squared_distance(point) > best.dist2) continue;
        if (node.left < 0) {
            for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
                std::uint32_t t = triangle_order_[i];
                std::array<double, 3> bary;
                Vec3 q = closest_point_on_triangle(point, mesh.corner(t, 0), mesh.corner(t, 1),
                                                   mesh.corner(t, 2), &bary);
                best.consider((point - q).squaredNorm(), t, q, bary);
            }
            continue;
        }
        double dl = nodes_[node.left].box.squared_distance(point);
        double dr = nodes_[node.right].box.squared_distance(point);
        // push farther child first so the nearer one is processed next
        if (dl <= dr) {
            if (dr <= best.dist2) stack[top++] = node.right;
            stack[top++] = node.left;
        } else {
            if (dl <= best.dist2) stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return finish(mesh, point, best);
}

ProjectionResult project_point_brute_force(const TriangleMesh& mesh, const Vec3& point) {
    if (mesh.empty()) throw EmptyGeometry("mesh is empty");
    Best best;
    for (std::uint32_t t = 0; t < mesh.triangle_count(); ++t) {
        std::array<double, 3> bary;
        Vec3 q = closest_point_on_triangle(point, mesh.corner(t, 0), mesh.corner(t, 1),
                                           mesh.corner(t, 2), &bary);
        best.consider((point - q).squaredNorm(), t, q, bary);
    }
    return finish(mesh, point, best);
}

} // namespace amcomp
