#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "meshcurv/errors.hpp"
#include "meshcurv/monge.hpp"
#include "meshcurv/rng.hpp"
#include "meshcurv/shape_operator.hpp"
#include "meshcurv/tri_mesh.hpp"

namespace meshcurv {

/// A one-ring around the origin: strictly increasing angles in [0, 2 pi) and
/// a positive radius per neighbor.
struct FanSpec {
    std::vector<double> angles;
    std::vector<double> radii;
};

/// Where the per-vertex Gauss map values of a trial mesh come from.
///
/// Sampled: unit normals of the generating surface at every fan vertex. The
/// trial then measures only how well each method turns Gauss map samples
/// into curvature, which is the regime of the random-fan comparison: a fan's
/// ring vertices are boundary wedges whose two one-sided faces put a
/// scale-free tilt bias (about half the true tilt) into any mesh-estimated
/// normal, drowning the differential method in a bias the experiment is not
/// about.
///
/// Estimated: centroid-weighted normals from the trial mesh itself, i.e. the
/// full mesh pipeline end to end, ring bias included.
enum class NormalPolicy { Sampled, Estimated };

struct BenchConfig {
    int n_surfaces = 100;
    int n_partitions = 100;
    std::uint64_t seed = 0;
    int degree_min = 2, degree_max = 3;
    double coeff_bound = 5.0;
    double radius_min = 0.05, radius_max = 0.15;
    int valence_min = 5, valence_max = 9;
    std::vector<Method> methods = {Method::GaussGrad, Method::TaubinArea, Method::TaubinCentroid,
                                   Method::ChenSchmitt};
    NormalPolicy normals = NormalPolicy::Sampled;
    int n_threads = 0;  ///< 0 resolves to MESHCURV_THREADS or hardware
};

/// Degrees uniform in [degree_min, degree_max], coefficients i.i.d. uniform
/// in [-bound, bound].
PolySurface random_surface(std::mt19937_64& rng, int degree_min, int degree_max, double bound);

/// Random partition of the circle: angles uniform, sorted, redrawn until all
/// consecutive gaps (wrap-around included) are positive and below 1.9 pi;
/// radii uniform in [radius_min, radius_max]. Throws RetryExhausted when the
/// bounded redraw budget runs out.
FanSpec random_fan(std::mt19937_64& rng, int valence_min, int valence_max, double radius_min,
                   double radius_max);

/// The test geometry: center vertex (0, 0, f(0, 0)) at index 0 ringed by the
/// fan points lifted onto the surface, triangulated center-to-consecutive,
/// counterclockwise in the (u, v) projection (normals point upward, matching
/// the analytic oracle's normal, so estimates compare sign-for-sign).
template <class Scalar>
TriMeshT<Scalar> build_fan_mesh(const PolySurfaceT<Scalar>& surface, const FanSpec& fan) {
    const int n = static_cast<int>(fan.angles.size());
    MatrixX3<Scalar> vertices(n + 1, 3);
    vertices.row(0) << Scalar(0), Scalar(0), surface(Scalar(0), Scalar(0));
    for (int i = 0; i < n; ++i) {
        const Scalar u = Scalar(fan.radii[static_cast<std::size_t>(i)] *
                                std::cos(fan.angles[static_cast<std::size_t>(i)]));
        const Scalar v = Scalar(fan.radii[static_cast<std::size_t>(i)] *
                                std::sin(fan.angles[static_cast<std::size_t>(i)]));
        vertices.row(i + 1) << u, v, surface(u, v);
    }
    MatrixX3i faces(n, 3);
    for (int i = 0; i < n; ++i) faces.row(i) << 0, i + 1, (i + 1) % n + 1;
    return TriMeshT<Scalar>(std::move(vertices), std::move(faces));
}

/// Guard floor for relative-error denominators.
inline constexpr double kErrDenominatorFloor = 1e-8;

/// Trials whose true |K| or |H| fall below this are excluded from relative
/// aggregates (and counted): a relative error against a vanishing truth is
/// meaningless.
inline constexpr double kNearZeroExclusion = 1e-4;

inline double relative_error(double true_value, double estimate) {
    return std::abs(true_value - estimate) / std::max(std::abs(true_value), kErrDenominatorFloor);
}

enum class TrialStatus : char { Kept, Excluded, Degraded };

struct TrialRecord {
    double err_k = 0;
    double err_h = 0;
    TrialStatus status = TrialStatus::Kept;
};

struct MethodStats {
    double mean_err_k = 0, std_err_k = 0;
    double mean_err_h = 0, std_err_h = 0;
    long n_kept = 0, n_excluded = 0, n_degraded = 0;
};

/// All per-trial records of one ensemble run. The trial matrix is aggregated
/// serially in index order, so reports are identical for any thread count.
struct BenchReport {
    BenchConfig config;
    /// records[(i * n_partitions + j) * methods.size() + m]
    std::vector<TrialRecord> records;

    const TrialRecord& trial(int surface, int partition, int method) const {
        const std::size_t w = config.methods.size();
        return records[(static_cast<std::size_t>(surface) * static_cast<std::size_t>(config.n_partitions) +
                        static_cast<std::size_t>(partition)) * w + static_cast<std::size_t>(method)];
    }

    /// Aggregate over all partitions of one surface.
    MethodStats surface_stats(int surface, int method) const;
    /// Aggregate over all surfaces of one partition.
    MethodStats partition_stats(int partition, int method) const;
    MethodStats overall_stats(int method) const;
};

/// Runs the full n_surfaces x n_partitions trial matrix: surfaces and
/// partitions are drawn from per-index substreams of the seed, every trial
/// estimates the center-vertex curvature with each configured method and
/// records Err(K), Err(H) against the analytic oracle. Deterministic for a
/// given seed regardless of execution order or thread count.
BenchReport run_ensemble(const BenchConfig& config);

}  // namespace meshcurv
