#include "amcomp/registration.hpp"

#include "amcomp/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace amcomp {

namespace {

Vec3 centroid_of(const std::vector<Vec3>& pts) {
    Vec3 c = Vec3::Zero();
    for (const Vec3& p : pts) c += p;
    return c / static_cast<double>(pts.size());
}

double rms_to_mesh(const std::vector<Vec3>& pts, const TriangleMesh& mesh, const Bvh& bvh,
                   const RigidTransform& t) {
    double s = 0.0;
    for (const Vec3& p : pts) {
        ProjectionResult r = bvh.project(mesh, t.apply(p));
        s += r.signed_distance * r.signed_distance;
    }
    return std::sqrt(s / static_cast<double>(pts.size()));
}

Mat3 principal_axes(const std::vector<Vec3>& pts, const Vec3& centroid) {
    Mat3 cov = Mat3::Zero();
    for (const Vec3& p : pts) {
        Vec3 d = p - centroid;
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
    Mat3 axes = eig.eigenvectors();
    if (axes.determinant() < 0.0) axes.col(0) = -axes.col(0);
    return axes;
}

} // namespace

double RigidTransform::rotation_angle() const {
    double c = (rotation.trace() - 1.0) / 2.0;
    return std::acos(std::clamp(c, -1.0, 1.0));
}

bool RigidTransform::is_valid() const {
    return (rotation.transpose() * rotation - Mat3::Identity()).norm() < 1e-9 &&
           std::abs(rotation.determinant() - 1.0) < 1e-9;
}

RigidTransform kabsch(const std::vector<Vec3>& source, const std::vector<Vec3>& target) {
    if (source.size() != target.size())
        throw DegenerateCorrespondences("correspondence lists differ in length");
    if (source.size() < 3)
        throw DegenerateCorrespondences("need at least 3 correspondences, got " +
                                        std::to_string(source.size()));

    Vec3 cs = centroid_of(source), ct = centroid_of(target);
    Mat3 cov = Mat3::Zero();
    for (std::size_t i = 0; i < source.size(); ++i)
        cov += (source[i] - cs) * (target[i] - ct).transpose();

    Eigen::JacobiSVD<Mat3> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vec3 sigma = svd.singularValues();
    // A rank-1 cross-covariance leaves rotation about the common line free.
    if (sigma[1] <= 1e-12 * std::max(sigma[0], 1.0))
        throw DegenerateCorrespondences("collinear or rank-deficient correspondences");

    Mat3 u = svd.matrixU(), v = svd.matrixV();
    Mat3 d = Mat3::Identity();
    d(2, 2) = (v * u.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
    Mat3 r = v * d * u.transpose();
    return {r, ct - r * cs};
}

IcpResult icp_align(const std::vector<Vec3>& points, const TriangleMesh& reference,
                    const Bvh& bvh, const IcpConfig& config) {
    if (points.size() < 3)
        throw DegenerateCorrespondences("ICP needs at least 3 points");

    // Initial pose candidates: raw pose, plus centroid + principal-axes
    // alignments over the four proper sign flips. The paper's workflow
    // delegates coarse alignment to an operator; this stands in for it.
    std::vector<RigidTransform> candidates;
    candidates.push_back(RigidTransform::identity());
    if (config.use_prealignment) {
        std::vector<Vec3> ref_pts;
        {
            auto samples = sample_surface(reference, 2048, /*seed=*/7);
            ref_pts.reserve(samples.size());
            for (const auto& s : samples) ref_pts.push_back(s.position);
        }
        Vec3 c_src = centroid_of(points), c_ref = centroid_of(ref_pts);
        Mat3 a_src = principal_axes(points, c_src);
        Mat3 a_ref = principal_axes(ref_pts, c_ref);
        const double flips[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
        for (const auto& f : flips) {
            Mat3 s = Mat3::Zero();
            for (int k = 0; k < 3; ++k) s(k, k) = f[k];
            Mat3 r = a_ref * s * a_src.transpose();
            candidates.push_back({r, c_ref - r * c_src});
        }
    }

    std::vector<Vec3> probe(points.begin(),
                            points.begin() + std::min<std::size_t>(points.size(), 256));
    RigidTransform transform = candidates.front();
    double best_rms = std::numeric_limits<double>::max();
    for (const RigidTransform& cand : candidates) {
        double r = rms_to_mesh(probe, reference, bvh, cand);
        if (r < best_rms) {
            best_rms = r;
            transform = cand;
        }
    }

    const std::size_t keep =
        std::max<std::size_t>(3, points.size() -
                                     static_cast<std::size_t>(config.trim_fraction *
                                                              static_cast<double>(points.size())));

    IcpResult result;
    result.transform = transform;
    double prev_rms = std::numeric_limits<double>::max();

    for (int iter = 0; iter < config.max_iters; ++iter) {
        // correspondences under the current pose
        std::vector<Vec3> src(points.size()), dst(points.size());
        std::vector<double> d2(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            Vec3 moved = transform.apply(points[i]);
            ProjectionResult r = bvh.project(reference, moved);
            src[i] = moved;
            dst[i] = r.closest_point;
            d2[i] = (moved - r.closest_point).squaredNorm();
        }

        std::vector<std::size_t> order(points.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return d2[a] < d2[b]; });

        std::vector<Vec3> s_kept, t_kept;
        s_kept.reserve(keep);
        t_kept.reserve(keep);
        for (std::size_t i = 0; i < keep; ++i) {
            s_kept.push_back(src[order[i]]);
            t_kept.push_back(dst[order[i]]);
        }

        RigidTransform delta = kabsch(s_kept, t_kept);
        RigidTransform updated = transform.then(delta);

        double rms = 0.0;
        for (std::size_t i = 0; i < keep; ++i)
            rms += (delta.apply(s_kept[i]) - t_kept[i]).squaredNorm();
        rms = std::sqrt(rms / static_cast<double>(keep));

        if (rms > prev_rms) break; // reject the step: RMS must be non-increasing

        transform = updated;
        result.transform = transform;
        result.final_rms = rms;
        result.iterations = iter + 1;
        if (prev_rms - rms < config.convergence_tol_mm) {
            result.converged = true;
            break;
        }
        prev_rms = rms;
    }
    return result;
}

DeviationStats summarize_deviations(const std::vector<double>& deviations) {
    DeviationStats stats;
    stats.count = deviations.size();
    if (deviations.empty()) return stats;

    double sum = 0.0, sum2 = 0.0;
    stats.min = deviations.front();
    stats.max = deviations.front();
    for (double d : deviations) {
        sum += d;
        sum2 += d * d;
        stats.min = std::min(stats.min, d);
        stats.max = std::max(stats.max, d);
    }
    double n = static_cast<double>(deviations.size());
    stats.mean = sum / n;
    stats.rms = std::sqrt(sum2 / n);
    double var = 0.0;
    for (double d : deviations) var += (d - stats.mean) * (d - stats.mean);
    stats.std_dev = deviations.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;

    stats.histogram_limit = std::max(std::abs(stats.min), std::abs(stats.max));
    stats.histogram.assign(DeviationStats::kHistogramBins, 0);
    double limit = stats.histogram_limit > 0.0 ? stats.histogram_limit : 1e-12;
    for (double d : deviations) {
        double u = (d + limit) / (2.0 * limit) * DeviationStats::kHistogramBins;
        int bin = std::clamp(static_cast<int>(u), 0, DeviationStats::kHistogramBins - 1);
        ++stats.histogram[static_cast<std::size_t>(bin)];
    }
    return stats;
}

std::pair<DeviationStats, std::vector<double>> deviation_stats(const std::vector<Vec3>& points,
                                                               const TriangleMesh& reference,
                                                               const Bvh& bvh,
                                                               const RigidTransform& transform) {
    std::vector<double> deviations;
    deviations.reserve(points.size());
    for (const Vec3& p : points)
        deviations.push_back(bvh.project(reference, transform.apply(p)).signed_distance);
    return {summarize_deviations(deviations), std::move(deviations)};
}

} // namespace amcomp
