#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "meshcurv/errors.hpp"
#include "meshcurv/tri_mesh.hpp"

namespace meshcurv {

/// Tolerance on barycentric coordinates for point-in-face tests; keeps edge
/// and vertex queries from being rejected to rounding.
inline constexpr double kBaryEps = 1e-10;

/// A weighted ZeroNormalSum check compares against this, not a scaled value:
/// the summands are unit vectors, so the scale is already fixed.
inline constexpr double kZeroNormalEps = 1e-12;

namespace detail {

/// Solves the 2x2 Gram system of the edge frame (v_j - v_i, v_k - v_i) for
/// one or more right-hand-side columns. The determinant equals the squared
/// cross-product norm, so it doubles as the degeneracy check.
template <class Scalar>
struct GramSolver {
    GramSolver(const Vector3<Scalar>& edge1, const Vector3<Scalar>& edge2, Scalar eps_area) {
        e1 = edge1;
        e2 = edge2;
        d11 = e1.squaredNorm();
        d12 = e1.dot(e2);
        d22 = e2.squaredNorm();
        det = d11 * d22 - d12 * d12;
        if (!(det >= eps_area * eps_area) || det == Scalar(0))
            throw SingularGramMatrix("edge Gram matrix is singular (degenerate face)");
    }

    // Coefficients (a, b) with rhs = (<x, e1>, <x, e2>).
    std::pair<Scalar, Scalar> solve(Scalar rhs1, Scalar rhs2) const {
        return {(d22 * rhs1 - d12 * rhs2) / det, (d11 * rhs2 - d12 * rhs1) / det};
    }

    Vector3<Scalar> e1, e2;
    Scalar d11, d12, d22, det;
};

/// Rotates (i, j, k) cyclically so that the corner `at` comes first.
template <class Scalar>
std::array<int, 3> corners_from(const TriMeshT<Scalar>& mesh, int f, int at) {
    const int i = mesh.faces()(f, 0), j = mesh.faces()(f, 1), k = mesh.faces()(f, 2);
    if (at == i) return {i, j, k};
    if (at == j) return {j, k, i};
    if (at == k) return {k, i, j};
    throw IndexOutOfRange("face " + std::to_string(f) + " does not contain vertex " + std::to_string(at));
}

}  // namespace detail

/// Evaluates the piecewise-linear extension of per-vertex values at a point
/// of face f. The point is expressed in barycentric coordinates of the face
/// (out-of-plane components are ignored); coordinates below -kBaryEps reject
/// the query.
template <class Scalar, class DerivedG>
Scalar evaluate_pl(const TriMeshT<Scalar>& mesh, const Eigen::MatrixBase<DerivedG>& values, int f,
                   const Vector3<Scalar>& p) {
    const int i = mesh.faces()(f, 0), j = mesh.faces()(f, 1), k = mesh.faces()(f, 2);
    const Vector3<Scalar> vi = mesh.vertex(i);
    const detail::GramSolver<Scalar> gram(mesh.vertex(j) - vi, mesh.vertex(k) - vi, mesh.area_eps());
    const Vector3<Scalar> d = p - vi;
    const auto [beta, gamma] = gram.solve(d.dot(gram.e1), d.dot(gram.e2));
    const Scalar alpha = Scalar(1) - beta - gamma;
    if (alpha < -Scalar(kBaryEps) || beta < -Scalar(kBaryEps) || gamma < -Scalar(kBaryEps))
        throw PointOutsideFace("point lies outside face " + std::to_string(f));
    return alpha * values(i) + beta * values(j) + gamma * values(k);
}

/// In-plane gradient of the PL extension on face f, anchored at the corner
/// `at`. For a matrix of values (one function per column) the result holds
/// one gradient per column; this is how the Gauss map differential is
/// assembled. Satisfies <grad, v_j - v_i> = g(v_j) - g(v_i) and likewise for
/// v_k by construction.
template <class Scalar, class DerivedG>
Eigen::Matrix<Scalar, 3, DerivedG::ColsAtCompileTime> face_gradient(
    const TriMeshT<Scalar>& mesh, const Eigen::MatrixBase<DerivedG>& values, int f, int at) {
    const auto [i, j, k] = detail::corners_from(mesh, f, at);
    const Vector3<Scalar> vi = mesh.vertex(i);
    const detail::GramSolver<Scalar> gram(mesh.vertex(j) - vi, mesh.vertex(k) - vi, mesh.area_eps());

    Eigen::Matrix<Scalar, 3, DerivedG::ColsAtCompileTime> grad(3, values.cols());
    for (Eigen::Index col = 0; col < values.cols(); ++col) {
        const auto [a, b] = gram.solve(values(j, col) - values(i, col), values(k, col) - values(i, col));
        grad.col(col) = a * gram.e1 + b * gram.e2;
    }
    return grad;
}

/// Influence of each incident face on a vertex, proportional to the inverse
/// squared distance from the vertex to the face centroid. Aligned with
/// star(v).incident_faces; weights are positive and sum to one.
template <class Scalar>
struct CentroidWeights {
    std::vector<int> faces;
    VectorX<Scalar> weights;
};

template <class Scalar>
CentroidWeights<Scalar> centroid_weights(const TriMeshT<Scalar>& mesh, int v) {
    const VertexStar& star = mesh.star(v);
    if (star.incident_faces.empty()) throw IsolatedVertex(v);
    CentroidWeights<Scalar> cw;
    cw.faces = star.incident_faces;
    cw.weights.resize(static_cast<Eigen::Index>(cw.faces.size()));
    const Vector3<Scalar> pos = mesh.vertex(v);
    for (std::size_t s = 0; s < cw.faces.size(); ++s) {
        const Scalar d2 = (mesh.face_centroid(cw.faces[s]) - pos).squaredNorm();
        // The centroid of a non-degenerate face is interior, never on a vertex.
        cw.weights[static_cast<Eigen::Index>(s)] = Scalar(1) / d2;
    }
    cw.weights /= cw.weights.sum();
    return cw;
}

/// Centroid-weighted combination of the per-face gradients over the one-ring.
template <class Scalar, class DerivedG>
Eigen::Matrix<Scalar, 3, DerivedG::ColsAtCompileTime> vertex_gradient(
    const TriMeshT<Scalar>& mesh, const Eigen::MatrixBase<DerivedG>& values, int v) {
    const CentroidWeights<Scalar> cw = centroid_weights(mesh, v);
    Eigen::Matrix<Scalar, 3, DerivedG::ColsAtCompileTime> sum(3, values.cols());
    sum.setZero();
    for (std::size_t s = 0; s < cw.faces.size(); ++s)
        sum += cw.weights[static_cast<Eigen::Index>(s)] * face_gradient(mesh, values, cw.faces[s], v);
    return sum;
}

/// Centroid-weighted unit vertex normal. Throws ZeroNormalSum when the
/// weighted face normals cancel (fold-back geometry); such a vertex has no
/// meaningful Gauss map value and downstream curvature would be garbage.
template <class Scalar>
Vector3<Scalar> vertex_normal(const TriMeshT<Scalar>& mesh, int v) {
    const CentroidWeights<Scalar> cw = centroid_weights(mesh, v);
    Vector3<Scalar> sum = Vector3<Scalar>::Zero();
    for (std::size_t s = 0; s < cw.faces.size(); ++s)
        sum += cw.weights[static_cast<Eigen::Index>(s)] * mesh.face_normal(cw.faces[s]);
    const Scalar norm = sum.norm();
    if (!(norm >= Scalar(kZeroNormalEps))) throw ZeroNormalSum(v);
    return sum / norm;
}

}  // namespace meshcurv
