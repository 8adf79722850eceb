#include "amcomp/mesh.hpp"

#include "amcomp/errors.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>

namespace amcomp {

namespace {

constexpr double kDegenerateArea = 1e-12; // mm^2

struct CellKey {
    std::int64_t x, y, z;
    bool operator==(const CellKey&) const = default;
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : {k.x, k.y, k.z}) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

double TriangleMesh::total_area() const {
    double a = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t) a += triangle_area(t);
    return a;
}

double TriangleMesh::signed_volume() const {
    double v = 0.0;
    for (const auto& t : triangles) {
        const Vec3 &a = vertices[t[0]], &b = vertices[t[1]], &c = vertices[t[2]];
        v += a.dot(b.cross(c));
    }
    return v / 6.0;
}

Aabb TriangleMesh::bounding_box() const {
    Aabb box;
    for (const Vec3& v : vertices) box.expand(v);
    return box;
}

Vec3 TriangleMesh::centroid() const {
    Vec3 c = Vec3::Zero();
    double area = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        double a = triangle_area(t);
        c += a / 3.0 * (corner(t, 0) + corner(t, 1) + corner(t, 2));
        area += a;
    }
    return area > 0.0 ? Vec3(c / area) : Vec3::Zero();
}

bool TriangleMesh::is_closed() const {
    if (triangles.empty()) return false;
    // Each directed edge must appear exactly once and be matched by its reverse.
    std::unordered_map<std::uint64_t, int> edges;
    auto key = [](std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    for (const auto& t : triangles) {
        for (int k = 0; k < 3; ++k) {
            std::uint32_t a = t[k], b = t[(k + 1) % 3];
            if (a == b) return false;
            if (++edges[key(a, b)] > 1) return false;
        }
    }
    for (const auto& [e, n] : edges) {
        std::uint32_t a = static_cast<std::uint32_t>(e >> 32);
        std::uint32_t b = static_cast<std::uint32_t>(e & 0xffffffffu);
        if (edges.find(key(b, a)) == edges.end()) return false;
    }
    return signed_volume() > 0.0;
}

void TriangleMesh::validate() const {
    for (const auto& t : triangles) {
        for (int k = 0; k < 3; ++k)
            if (t[k] >= vertices.size()) throw Error("triangle index out of range");
    }
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        if (triangle_area(t) <= kDegenerateArea) throw Error("degenerate triangle in mesh");
    }
}

TriangleMesh mesh_from_soup(const std::vector<Vec3>& corners, double weld_tol,
                            std::size_t* dropped_degenerate) {
    TriangleMesh mesh;
    std::unordered_map<CellKey, std::vector<std::uint32_t>, CellHash> grid;
    const double inv = 1.0 / weld_tol;

    auto intern = [&](const Vec3& p) -> std::uint32_t {
        std::int64_t cx = static_cast<std::int64_t>(std::floor(p.x() * inv));
        std::int64_t cy = static_cast<std::int64_t>(std::floor(p.y() * inv));
        std::int64_t cz = static_cast<std::int64_t>(std::floor(p.z() * inv));
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = grid.find({cx + dx, cy + dy, cz + dz});
                    if (it == grid.end()) continue;
                    for (std::uint32_t idx : it->second)
                        if ((mesh.vertices[idx] - p).norm() <= weld_tol) return idx;
                }
        std::uint32_t idx = static_cast<std::uint32_t>(mesh.vertices.size());
        mesh.vertices.push_back(p);
        grid[{cx, cy, cz}].push_back(idx);
        return idx;
    };

    std::size_t dropped = 0;
    for (std::size_t i = 0; i + 2 < corners.size(); i += 3) {
        std::uint32_t a = intern(corners[i]);
        std::uint32_t b = intern(corners[i + 1]);
        std::uint32_t c = intern(corners[i + 2]);
        if (a == b || b == c || a == c ||
            triangle_area(mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]) <= kDegenerateArea) {
            ++dropped;
            continue;
        }
        mesh.triangles.push_back({a, b, c});
    }
    if (dropped_degenerate) *dropped_degenerate = dropped;
    return mesh;
}

std::vector<SurfaceSample> sample_surface(const TriangleMesh& mesh, std::size_t count,
                                          std::uint64_t seed) {
    if (mesh.empty()) throw EmptyGeometry("cannot sample an empty mesh");

    std::vector<double> cumulative(mesh.triangle_count());
    double total = 0.0;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        total += mesh.triangle_area(t);
        cumulative[t] = total;
    }

    std::mt19937_64 rng(seed);
    std::vector<SurfaceSample> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double r = canonical_double(rng) * total;
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), r);
        std::size_t tri = std::min<std::size_t>(it - cumulative.begin(), mesh.triangle_count() - 1);

        // sqrt trick gives uniform barycentric coordinates
        double su = std::sqrt(canonical_double(rng));
        double v = canonical_double(rng);
        double b0 = 1.0 - su, b1 = su * (1.0 - v), b2 = su * v;

        SurfaceSample s;
        s.triangle_index = static_cast<std::uint32_t>(tri);
        s.barycentric = {b0, b1, b2};
        s.position = mesh.point_at(tri, s.barycentric);
        s.normal = mesh.triangle_normal(tri);
        samples.push_back(s);
    }
    return samples;
}

} // namespace amcomp
