#pragma once

#include "amcomp/bvh.hpp"
#include "amcomp/mesh.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace amcomp {

/// Proper rigid transform p -> rotation * p + translation.
struct RigidTransform {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
    RigidTransform then(const RigidTransform& outer) const {
        return {outer.rotation * rotation, outer.rotation * translation + outer.translation};
    }
    RigidTransform inverse() const {
        Mat3 rt = rotation.transpose();
        return {rt, -(rt * translation)};
    }
    static RigidTransform identity() { return {}; }

    /// Rotation angle in radians; 0 for the identity.
    double rotation_angle() const;
    /// R orthonormal and det(R) = +1 within 1e-9.
    bool is_valid() const;
};

/// Least-squares rigid transform mapping source points onto target points
/// (equal-length correspondence lists, no scaling, reflections excluded).
/// Throws DegenerateCorrespondences for n < 3 or collinear configurations.
RigidTransform kabsch(const std::vector<Vec3>& source, const std::vector<Vec3>& target);

struct IcpConfig {
    int max_iters = 200;
    double convergence_tol_mm = 1e-9; // stop when RMS improvement drops below this
    double trim_fraction = 0.05;      // worst correspondences excluded per iteration
    bool use_prealignment = true;     // principal-axes + centroid initial guess
};

struct IcpResult {
    RigidTransform transform; // maps input points into the reference frame
    double final_rms = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Trimmed point-to-point ICP against a reference mesh. The initial pose is
/// picked from the raw pose plus four principal-axes candidates by lowest RMS;
/// accepted iterations have non-increasing RMS.
IcpResult icp_align(const std::vector<Vec3>& points, const TriangleMesh& reference,
                    const Bvh& bvh, const IcpConfig& config = {});

struct DeviationStats {
    double mean = 0.0;
    double std_dev = 0.0; // sample standard deviation (n - 1)
    double rms = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;

    static constexpr int kHistogramBins = 64;
    // fixed-width bins over the symmetric range [-limit, +limit]
    double histogram_limit = 0.0;
    std::vector<std::size_t> histogram;
};

/// Signed point-to-surface deviations of `transform`-mapped points against the
/// reference mesh, with summary statistics. Alignment is a separate concern:
/// pass the ICP result (or identity) explicitly.
std::pair<DeviationStats, std::vector<double>> deviation_stats(const std::vector<Vec3>& points,
                                                               const TriangleMesh& reference,
                                                               const Bvh& bvh,
                                                               const RigidTransform& transform);

/// Builds DeviationStats (including the histogram) from raw signed deviations.
DeviationStats summarize_deviations(const std::vector<double>& deviations);

} // namespace amcomp
