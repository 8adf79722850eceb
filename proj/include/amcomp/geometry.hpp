#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>

namespace amcomp {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;

/// Axis-aligned bounding box.
struct Aabb {
    Vec3 min = Vec3::Constant(std::numeric_limits<double>::max());
    Vec3 max = Vec3::Constant(std::numeric_limits<double>::lowest());

    void expand(const Vec3& p) {
        min = min.cwiseMin(p);
        max = max.cwiseMax(p);
    }
    void expand(const Aabb& b) {
        min = min.cwiseMin(b.min);
        max = max.cwiseMax(b.max);
    }
    bool contains(const Aabb& b) const {
        return (b.min.array() >= min.array()).all() && (b.max.array() <= max.array()).all();
    }
    Vec3 center() const { return 0.5 * (min + max); }
    Vec3 extent() const { return max - min; }

    /// Squared distance from a point to the box (0 inside).
    double squared_distance(const Vec3& p) const {
        double d2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            double v = p[k];
            if (v < min[k]) d2 += (min[k] - v) * (min[k] - v);
            else if (v > max[k]) d2 += (v - max[k]) * (v - max[k]);
        }
        return d2;
    }
};

inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

/// Unit normal from winding (a, b, c); zero vector for degenerate triangles.
inline Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 n = (b - a).cross(c - a);
    double len = n.norm();
    return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

/// Closest point on triangle (a, b, c) to p, with barycentric coordinates.
/// Ericson, Real-Time Collision Detection, 5.1.5.
inline Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c,
                                      std::array<double, 3>* barycentric = nullptr) {
    auto finish = [&](double u, double v, double w, const Vec3& q) {
        if (barycentric) *barycentric = {u, v, w};
        return q;
    };

    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return finish(1, 0, 0, a);

    Vec3 bp = p - b;
    double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return finish(0, 1, 0, b);

    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        double v = d1 / (d1 - d3);
        return finish(1 - v, v, 0, a + v * ab);
    }

    Vec3 cp = p - c;
    double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return finish(0, 0, 1, c);

    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        double w = d2 / (d2 - d6);
        return finish(1 - w, 0, w, a + w * ac);
    }

    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return finish(0, 1 - w, w, b + w * (c - b));
    }

    double denom = 1.0 / (va + vb + vc);
    double v = vb * denom, w = vc * denom;
    return finish(1 - v - w, v, w, a + ab * v + ac * w);
}

/// Canonical double in [0, 1) from a 64-bit generator; identical on every platform.
template <class Rng>
inline double canonical_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace amcomp
