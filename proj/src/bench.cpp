#include "meshcurv/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "meshcurv/gauss_estimator.hpp"
#include "meshcurv/normal_curvature.hpp"
#include "meshcurv/parallel.hpp"

namespace meshcurv {

namespace {

// Substream tags so surface and partition draws never collide.
constexpr std::uint64_t kSurfaceStream = 0x5351;
constexpr std::uint64_t kPartitionStream = 0x8A97;

constexpr int kFanRedrawLimit = 1000;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

/// The Gauss map of a trial mesh under the configured policy. Every method
/// of a trial reads the same field, so the comparison stays fair.
NormalField<double> trial_normal_field(const TriMesh& mesh, const PolySurface& surface,
                                       NormalPolicy policy) {
    if (policy == NormalPolicy::Estimated) return gauss_map_field(mesh);
    NormalField<double> field;
    field.values.resize(mesh.num_vertices(), 3);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const Eigen::Vector3d p = mesh.vertex(v);
        field.values.row(v) = analytic_curvature(surface, p.x(), p.y()).unit_normal.transpose();
    }
    return field;
}

/// Center-vertex estimate; vertex 0 is the fan center.
CurvatureResult<double> estimate_center(const TriMesh& mesh, const NormalField<double>& field,
                                        Method method) {
    switch (method) {
        case Method::GaussGrad:
            return gauss_grad_estimate(mesh, field, 0);
        case Method::TaubinArea:
        case Method::TaubinCentroid: {
            const auto basis = tangent_basis<double>(field.at(0));
            const auto scheme = method == Method::TaubinArea ? NeighborWeighting::Area
                                                             : NeighborWeighting::Centroid;
            return taubin_from_samples(neighbor_samples(mesh, 0, field.at(0), scheme), basis, method);
        }
        case Method::ChenSchmitt: {
            const auto basis = tangent_basis<double>(field.at(0));
            return chen_schmitt_from_samples(
                neighbor_samples(mesh, 0, field.at(0), NeighborWeighting::Area), basis);
        }
    }
    throw Error("unknown method");
}

struct Welford {
    long n = 0;
    double mean_k = 0, m2_k = 0;
    double mean_h = 0, m2_h = 0;

    void add(double err_k, double err_h) {
        ++n;
        const double dk = err_k - mean_k;
        mean_k += dk / static_cast<double>(n);
        m2_k += dk * (err_k - mean_k);
        const double dh = err_h - mean_h;
        mean_h += dh / static_cast<double>(n);
        m2_h += dh * (err_h - mean_h);
    }

    // Sample standard deviation; 0 for a single observation, NaN for none.
    double std_k() const { return n > 1 ? std::sqrt(m2_k / static_cast<double>(n - 1)) : (n == 1 ? 0 : nan_value()); }
    double std_h() const { return n > 1 ? std::sqrt(m2_h / static_cast<double>(n - 1)) : (n == 1 ? 0 : nan_value()); }
};

template <class TrialAt>
MethodStats aggregate(long count, TrialAt&& trial_at) {
    MethodStats stats;
    Welford acc;
    for (long t = 0; t < count; ++t) {
        const TrialRecord& rec = trial_at(t);
        switch (rec.status) {
            case TrialStatus::Kept:
                acc.add(rec.err_k, rec.err_h);
                ++stats.n_kept;
                break;
            case TrialStatus::Excluded:
                ++stats.n_excluded;
                break;
            case TrialStatus::Degraded:
                ++stats.n_degraded;
                break;
        }
    }
    stats.mean_err_k = acc.n > 0 ? acc.mean_k : nan_value();
    stats.mean_err_h = acc.n > 0 ? acc.mean_h : nan_value();
    stats.std_err_k = acc.std_k();
    stats.std_err_h = acc.std_h();
    return stats;
}

}  // namespace

PolySurface random_surface(std::mt19937_64& rng, int degree_min, int degree_max, double bound) {
    const int m = uniform_int(rng, degree_min, degree_max);
    const int n = uniform_int(rng, degree_min, degree_max);
    PolySurface::Coefficients coeffs(m + 1, n + 1);
    for (Eigen::Index i = 0; i <= m; ++i)
        for (Eigen::Index j = 0; j <= n; ++j) coeffs(i, j) = uniform_real(rng, -bound, bound);
    return PolySurface(std::move(coeffs));
}

FanSpec random_fan(std::mt19937_64& rng, int valence_min, int valence_max, double radius_min,
                   double radius_max) {
    constexpr double two_pi = 2 * std::numbers::pi;
    const int n = uniform_int(rng, valence_min, valence_max);
    for (int attempt = 0; attempt < kFanRedrawLimit; ++attempt) {
        std::vector<double> angles(static_cast<std::size_t>(n));
        for (auto& a : angles) a = uniform_real(rng, 0.0, two_pi);
        std::sort(angles.begin(), angles.end());

        bool ok = true;
        for (int i = 0; i < n; ++i) {
            const double gap = i + 1 < n ? angles[static_cast<std::size_t>(i + 1)] - angles[static_cast<std::size_t>(i)]
                                         : angles.front() + two_pi - angles.back();
            if (gap <= 1e-9 || gap >= 1.9 * std::numbers::pi) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        FanSpec fan;
        fan.angles = std::move(angles);
        fan.radii.resize(static_cast<std::size_t>(n));
        for (auto& r : fan.radii) r = uniform_real(rng, radius_min, radius_max);
        return fan;
    }
    throw RetryExhausted("no admissible fan partition after " + std::to_string(kFanRedrawLimit) +
                         " redraws");
}

MethodStats BenchReport::surface_stats(int surface, int method) const {
    return aggregate(config.n_partitions,
                     [&](long j) -> const TrialRecord& { return trial(surface, static_cast<int>(j), method); });
}

MethodStats BenchReport::partition_stats(int partition, int method) const {
    return aggregate(config.n_surfaces,
                     [&](long i) -> const TrialRecord& { return trial(static_cast<int>(i), partition, method); });
}

MethodStats BenchReport::overall_stats(int method) const {
    const long total = static_cast<long>(config.n_surfaces) * config.n_partitions;
    return aggregate(total, [&](long t) -> const TrialRecord& {
        return trial(static_cast<int>(t / config.n_partitions), static_cast<int>(t % config.n_partitions),
                     method);
    });
}

BenchReport run_ensemble(const BenchConfig& config) {
    if (config.n_surfaces < 1 || config.n_partitions < 1) throw Error("ensemble counts must be >= 1");
    if (config.valence_min < 3 || config.valence_max < config.valence_min)
        throw Error("fan valence range must contain integers >= 3");
    if (!(config.radius_min > 0) || config.radius_max < config.radius_min)
        throw Error("fan radius range must be positive");
    if (config.degree_min < 0 || config.degree_max < config.degree_min)
        throw Error("degree range is empty");
    if (config.methods.empty()) throw Error("no methods configured");

    BenchReport report;
    report.config = config;

    std::vector<PolySurface> surfaces(static_cast<std::size_t>(config.n_surfaces));
    for (int i = 0; i < config.n_surfaces; ++i) {
        auto rng = make_rng(substream_key(config.seed, kSurfaceStream, static_cast<std::uint64_t>(i)));
        surfaces[static_cast<std::size_t>(i)] =
            random_surface(rng, config.degree_min, config.degree_max, config.coeff_bound);
    }
    std::vector<FanSpec> fans(static_cast<std::size_t>(config.n_partitions));
    for (int j = 0; j < config.n_partitions; ++j) {
        auto rng = make_rng(substream_key(config.seed, kPartitionStream, static_cast<std::uint64_t>(j)));
        fans[static_cast<std::size_t>(j)] =
            random_fan(rng, config.valence_min, config.valence_max, config.radius_min, config.radius_max);
    }

    const std::size_t n_methods = config.methods.size();
    const std::int64_t n_trials = static_cast<std::int64_t>(config.n_surfaces) * config.n_partitions;
    report.records.assign(static_cast<std::size_t>(n_trials) * n_methods, TrialRecord{});

    parallel_for(n_trials, config.n_threads, [&](std::int64_t t) {
        const int i = static_cast<int>(t / config.n_partitions);
        const int j = static_cast<int>(t % config.n_partitions);
        TrialRecord* out = &report.records[static_cast<std::size_t>(t) * n_methods];

        const SurfaceCurvature<double> truth = analytic_curvature(surfaces[static_cast<std::size_t>(i)], 0.0, 0.0);
        if (std::abs(truth.gaussian) < kNearZeroExclusion || std::abs(truth.mean) < kNearZeroExclusion) {
            for (std::size_t m = 0; m < n_methods; ++m) {
                out[m].status = TrialStatus::Excluded;
                out[m].err_k = out[m].err_h = nan_value();
            }
            return;
        }

        bool mesh_ok = true;
        TriMesh mesh;
        try {
            mesh = build_fan_mesh(surfaces[static_cast<std::size_t>(i)], fans[static_cast<std::size_t>(j)]);
        } catch (const Error&) {
            mesh_ok = false;  // sliver face; the whole trial degrades
        }

        NormalField<double> field;
        if (mesh_ok) {
            try {
                field = trial_normal_field(mesh, surfaces[static_cast<std::size_t>(i)], config.normals);
            } catch (const Error&) {
                mesh_ok = false;
            }
        }

        for (std::size_t m = 0; m < n_methods; ++m) {
            if (!mesh_ok) {
                out[m].status = TrialStatus::Degraded;
                out[m].err_k = out[m].err_h = nan_value();
                continue;
            }
            try {
                const CurvatureResult<double> est = estimate_center(mesh, field, config.methods[m]);
                if (!std::isfinite(est.gaussian) || !std::isfinite(est.mean)) throw Error("non-finite estimate");
                out[m].err_k = relative_error(truth.gaussian, est.gaussian);
                out[m].err_h = relative_error(truth.mean, est.mean);
                out[m].status = TrialStatus::Kept;
            } catch (const Error&) {
                out[m].status = TrialStatus::Degraded;
                out[m].err_k = out[m].err_h = nan_value();
            }
        }
    });
    return report;
}

}  // namespace meshcurv
