#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

#include "meshcurv/errors.hpp"
#include "meshcurv/pl_gradient.hpp"
#include "meshcurv/shape_operator.hpp"
#include "meshcurv/tri_mesh.hpp"

namespace meshcurv {

/// Euler formula: normal curvature along a direction at angle theta from the
/// kappa1 principal direction.
template <class Scalar>
Scalar euler_normal_curvature(Scalar kappa1, Scalar kappa2, Scalar theta) {
    const Scalar c = std::cos(theta), s = std::sin(theta);
    return kappa1 * c * c + kappa2 * s * s;
}

/// One neighbor's contribution to a normal-curvature fit: unit tangent
/// direction, chord-based circular-arc curvature estimate, and weight.
template <class Scalar>
struct NeighborSample {
    Vector3<Scalar> t;  ///< unit tangent, perpendicular to the vertex normal
    Scalar kn;          ///< 2 <v_i - v, N> / |v_i - v|^2
    Scalar weight;      ///< >= 0, weights of a vertex's samples sum to 1
    int neighbor;
};

enum class NeighborWeighting {
    Area,     ///< share of one-ring area on the faces containing both endpoints
    Centroid  ///< share of centroid weights on those faces
};

/// Tangent projections and chord curvature estimates toward every one-ring
/// neighbor. The projection rejects neighbors lying along +-N (no tangent
/// direction exists there).
template <class Scalar>
std::vector<NeighborSample<Scalar>> neighbor_samples(const TriMeshT<Scalar>& mesh, int v,
                                                     const Vector3<Scalar>& normal,
                                                     NeighborWeighting scheme) {
    const VertexStar& star = mesh.star(v);
    if (star.incident_faces.empty()) throw IsolatedVertex(v);
    const Vector3<Scalar> pos = mesh.vertex(v);

    CentroidWeights<Scalar> cw;
    if (scheme == NeighborWeighting::Centroid) cw = centroid_weights(mesh, v);

    std::vector<NeighborSample<Scalar>> samples;
    samples.reserve(star.neighbors.size());
    Scalar weight_sum = 0;
    for (const int w : star.neighbors) {
        const Vector3<Scalar> d = mesh.vertex(w) - pos;
        const Scalar along_normal = d.dot(normal);
        const Vector3<Scalar> proj = d - along_normal * normal;
        const Scalar proj_norm = proj.norm();
        if (!(proj_norm >= Scalar(1e-12) * d.norm()))
            throw DegenerateProjection("neighbor " + std::to_string(w) + " of vertex " +
                                       std::to_string(v) + " lies along the normal");
        NeighborSample<Scalar> s;
        s.t = proj / proj_norm;
        s.kn = Scalar(2) * along_normal / d.squaredNorm();
        s.neighbor = w;
        s.weight = 0;
        for (std::size_t fi = 0; fi < star.incident_faces.size(); ++fi) {
            const int f = star.incident_faces[fi];
            const auto face = mesh.face(f);
            if (face[0] != w && face[1] != w && face[2] != w) continue;
            s.weight += scheme == NeighborWeighting::Area ? mesh.face_area(f)
                                                          : cw.weights[static_cast<Eigen::Index>(fi)];
        }
        weight_sum += s.weight;
        samples.push_back(s);
    }
    for (auto& s : samples) s.weight /= weight_sum;
    return samples;
}

/// The discrete Taubin matrix: weighted sum of kn t t^T over the samples,
/// with its restriction to the tangent plane eigendecomposed.
template <class Scalar>
struct TaubinMatrix {
    Matrix3<Scalar> b;
    Scalar m1, m2;  ///< tangent-plane eigenvalues, m1 >= m2
    Eigen::Matrix<Scalar, 2, 1> u1, u2;
    Scalar normal_residual;  ///< |B n| / |B|_F, the off-tangent leakage
};

template <class Scalar>
TaubinMatrix<Scalar> taubin_matrix(const std::vector<NeighborSample<Scalar>>& samples,
                                   const TangentBasis<Scalar>& basis) {
    TaubinMatrix<Scalar> tm;
    tm.b.setZero();
    for (const auto& s : samples) tm.b += s.weight * s.kn * (s.t * s.t.transpose());

    // Restrict to the tangent plane via the frame instead of Taubin's
    // Householder-plus-Givens routine; same target, fewer moving parts.
    const Scalar b11 = basis.e1.dot(tm.b * basis.e1);
    const Scalar b12 = basis.e1.dot(tm.b * basis.e2);
    const Scalar b22 = basis.e2.dot(tm.b * basis.e2);
    const SymEigen2<Scalar> eig = sym_eigen2(b11, b12, b22);
    tm.m1 = eig.l1;
    tm.m2 = eig.l2;
    tm.u1 = eig.u1;
    tm.u2 = eig.u2;
    const Scalar fro = tm.b.norm();
    tm.normal_residual = fro > Scalar(0) ? (tm.b * basis.n).norm() / fro : Scalar(0);
    return tm;
}

/// Principal curvatures from the tangent eigenvalues of the Taubin matrix:
/// kappa1 = 3 m1 - m2, kappa2 = 3 m2 - m1.
template <class Scalar>
CurvatureResult<Scalar> taubin_from_samples(const std::vector<NeighborSample<Scalar>>& samples,
                                            const TangentBasis<Scalar>& basis, Method tag) {
    if (samples.size() < 3)
        throw TooFewNeighbors("taubin estimate needs at least 3 neighbors, got " +
                              std::to_string(samples.size()));
    const TaubinMatrix<Scalar> tm = taubin_matrix(samples, basis);
    CurvatureResult<Scalar> res;
    res.method = tag;
    res.kappa1 = Scalar(3) * tm.m1 - tm.m2;
    res.kappa2 = Scalar(3) * tm.m2 - tm.m1;
    res.gaussian = res.kappa1 * res.kappa2;
    res.mean = (res.kappa1 + res.kappa2) / Scalar(2);
    res.dir1 = canonical_direction<Scalar>(tm.u1[0] * basis.e1 + tm.u1[1] * basis.e2);
    res.dir2 = canonical_direction<Scalar>(tm.u2[0] * basis.e1 + tm.u2[1] * basis.e2);
    res.dirs_indeterminate =
        std::abs(res.kappa1 - res.kappa2) < Scalar(kUmbilicEps) * std::max(Scalar(1), std::abs(res.kappa1));
    if (res.dirs_indeterminate) {
        res.dir1 = basis.e1;
        res.dir2 = basis.e2;
    }
    return res;
}

template <class Scalar>
CurvatureResult<Scalar> taubin_estimate(const TriMeshT<Scalar>& mesh, int v,
                                        NeighborWeighting scheme) {
    const Vector3<Scalar> normal = vertex_normal(mesh, v);
    const TangentBasis<Scalar> basis = tangent_basis(normal);
    auto res = taubin_from_samples(neighbor_samples(mesh, v, normal, scheme), basis,
                                   scheme == NeighborWeighting::Area ? Method::TaubinArea
                                                                     : Method::TaubinCentroid);
    res.boundary = mesh.star(v).is_boundary;
    return res;
}

/// Least-squares fit of kn(theta) = C1 cos^2 + C2 cos sin + C3 sin^2 in the
/// frame (r1, r2) = (basis.e1, basis.e2).
template <class Scalar>
struct EulerFit {
    Scalar c1, c2, c3;
    Scalar theta0;  ///< angle of the kappa1 principal direction from r1
    TangentBasis<Scalar> frame;
    Scalar rms_residual;
};

/// Condition-number cap on the 3x3 normal equations; beyond it the sample
/// angles are too degenerate to determine three coefficients.
inline constexpr double kFitConditionLimit = 1e12;

template <class Scalar>
EulerFit<Scalar> fit_euler_formula(const std::vector<NeighborSample<Scalar>>& samples,
                                   const TangentBasis<Scalar>& basis) {
    Matrix3<Scalar> m = Matrix3<Scalar>::Zero();
    Vector3<Scalar> rhs = Vector3<Scalar>::Zero();
    for (const auto& s : samples) {
        const Scalar c = s.t.dot(basis.e1), sn = s.t.dot(basis.e2);
        const Vector3<Scalar> row(c * c, c * sn, sn * sn);
        m += row * row.transpose();
        rhs += row * s.kn;
    }
    Eigen::SelfAdjointEigenSolver<Matrix3<Scalar>> eig(m);
    const Scalar lmin = eig.eigenvalues()[0], lmax = eig.eigenvalues()[2];
    if (!(lmin > Scalar(0)) || lmax / lmin > Scalar(kFitConditionLimit))
        throw RankDeficientFit("sample angles are rank deficient for the Euler-formula fit");
    const Vector3<Scalar> coeff = eig.eigenvectors() *
                                  (eig.eigenvectors().transpose() * rhs).cwiseQuotient(eig.eigenvalues());

    EulerFit<Scalar> fit;
    fit.c1 = coeff[0];
    fit.c2 = coeff[1];
    fit.c3 = coeff[2];
    fit.theta0 = std::atan2(fit.c2, fit.c1 - fit.c3) / Scalar(2);
    fit.frame = basis;
    Scalar sq = 0;
    for (const auto& s : samples) {
        const Scalar c = s.t.dot(basis.e1), sn = s.t.dot(basis.e2);
        const Scalar model = fit.c1 * c * c + fit.c2 * c * sn + fit.c3 * sn * sn;
        sq += (model - s.kn) * (model - s.kn);
    }
    fit.rms_residual = std::sqrt(sq / static_cast<Scalar>(samples.size()));
    return fit;
}

/// Inverts the fit: kappa1 + kappa2 = C1 + C3 and (kappa1 - kappa2)
/// (cos 2 theta0, sin 2 theta0) = (C1 - C3, C2), with kappa1 >= kappa2. The
/// kappa1 direction sits at +theta0 from r1.
template <class Scalar>
CurvatureResult<Scalar> chen_schmitt_from_samples(const std::vector<NeighborSample<Scalar>>& samples,
                                                  const TangentBasis<Scalar>& basis,
                                                  EulerFit<Scalar>* fit_out = nullptr) {
    if (samples.size() < 3)
        throw TooFewNeighbors("least-squares estimate needs at least 3 neighbors, got " +
                              std::to_string(samples.size()));
    const EulerFit<Scalar> fit = fit_euler_formula(samples, basis);
    if (fit_out) *fit_out = fit;

    CurvatureResult<Scalar> res;
    res.method = Method::ChenSchmitt;
    const Scalar sum = fit.c1 + fit.c3;
    const Scalar diff = std::hypot(fit.c1 - fit.c3, fit.c2);
    res.kappa1 = (sum + diff) / Scalar(2);
    res.kappa2 = (sum - diff) / Scalar(2);
    res.gaussian = res.kappa1 * res.kappa2;
    res.mean = sum / Scalar(2);
    res.dirs_indeterminate = diff < Scalar(kUmbilicEps) * std::max(Scalar(1), std::abs(res.kappa1));
    if (res.dirs_indeterminate) {
        res.dir1 = basis.e1;
        res.dir2 = basis.e2;
    } else {
        const Scalar c = std::cos(fit.theta0), s = std::sin(fit.theta0);
        res.dir1 = canonical_direction<Scalar>(c * basis.e1 + s * basis.e2);
        res.dir2 = canonical_direction<Scalar>(-s * basis.e1 + c * basis.e2);
    }
    return res;
}

template <class Scalar>
CurvatureResult<Scalar> chen_schmitt_estimate(const TriMeshT<Scalar>& mesh, int v) {
    const Vector3<Scalar> normal = vertex_normal(mesh, v);
    const TangentBasis<Scalar> basis = tangent_basis(normal);
    auto res = chen_schmitt_from_samples(
        neighbor_samples(mesh, v, normal, NeighborWeighting::Area), basis);
    res.boundary = mesh.star(v).is_boundary;
    return res;
}

}  // namespace meshcurv
