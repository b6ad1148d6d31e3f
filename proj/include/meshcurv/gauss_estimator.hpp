#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

#include "meshcurv/errors.hpp"
#include "meshcurv/normal_curvature.hpp"
#include "meshcurv/parallel.hpp"
#include "meshcurv/pl_gradient.hpp"
#include "meshcurv/shape_operator.hpp"
#include "meshcurv/tri_mesh.hpp"

namespace meshcurv {

/// The discrete Gauss map: one unit normal per vertex. Column k of `values`
/// is the k-th component function on the vertices, which is exactly what the
/// gradient machinery differentiates.
template <class Scalar>
struct NormalField {
    MatrixX3<Scalar> values;

    Vector3<Scalar> at(int v) const { return values.row(v).transpose(); }
    auto component(int k) const { return values.col(k); }
};

/// Lenient variant for batch runs: vertices whose normal cannot be computed
/// get a NaN row and a degraded mark instead of aborting the whole mesh.
template <class Scalar>
std::pair<NormalField<Scalar>, std::vector<char>> gauss_map_field_lenient(
    const TriMeshT<Scalar>& mesh, int n_threads = 1) {
    const int nv = mesh.num_vertices();
    NormalField<Scalar> field;
    field.values.resize(nv, 3);
    std::vector<char> degraded(static_cast<std::size_t>(nv), 0);
    parallel_for(nv, n_threads, [&](std::int64_t v) {
        try {
            field.values.row(static_cast<int>(v)) = vertex_normal(mesh, static_cast<int>(v)).transpose();
        } catch (const Error&) {
            field.values.row(static_cast<int>(v)).setConstant(std::numeric_limits<Scalar>::quiet_NaN());
            degraded[static_cast<std::size_t>(v)] = 1;
        }
    });
    return {std::move(field), std::move(degraded)};
}

/// Strict Gauss map assembly: throws the offending vertex's error.
template <class Scalar>
NormalField<Scalar> gauss_map_field(const TriMeshT<Scalar>& mesh, int n_threads = 1) {
    auto [field, degraded] = gauss_map_field_lenient(mesh, n_threads);
    for (std::size_t v = 0; v < degraded.size(); ++v)
        if (degraded[v]) vertex_normal(mesh, static_cast<int>(v));  // rethrows with the vertex id
    return std::move(field);
}

/// The 3x3 differential of the Gauss map at a vertex: columns are the vertex
/// gradients of the three normal component functions.
template <class Scalar>
Matrix3<Scalar> estimate_dN(const TriMeshT<Scalar>& mesh, const NormalField<Scalar>& field, int v) {
    return vertex_gradient(mesh, field.values, v);
}

/// Full gauss-grad pipeline at one vertex: dN, projection onto the tangent
/// frame of N(v), curvature extraction.
template <class Scalar>
CurvatureResult<Scalar> gauss_grad_estimate(const TriMeshT<Scalar>& mesh,
                                            const NormalField<Scalar>& field, int v,
                                            bool symmetrize = true) {
    const Matrix3<Scalar> dn = estimate_dN(mesh, field, v);
    const TangentBasis<Scalar> basis = tangent_basis<Scalar>(field.at(v));
    auto res = curvatures_from_shape_operator(project_shape_operator(dn, basis, symmetrize));
    res.method = Method::GaussGrad;
    res.boundary = mesh.star(v).is_boundary;
    return res;
}

template <class Scalar>
CurvatureResult<Scalar> degraded_result(const TriMeshT<Scalar>& mesh, int v, Method method) {
    const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
    CurvatureResult<Scalar> res;
    res.gaussian = res.mean = res.kappa1 = res.kappa2 = nan;
    res.dir1.setConstant(nan);
    res.dir2.setConstant(nan);
    res.method = method;
    res.boundary = mesh.star(v).is_boundary;
    res.degraded = true;
    return res;
}

/// Per-vertex curvature estimation over the whole mesh, one result per
/// vertex in index order regardless of thread count. Vertices where any step
/// fails are flagged degraded with NaN curvatures rather than failing the
/// mesh; boundary vertices are flagged but estimated normally.
template <class Scalar>
std::vector<CurvatureResult<Scalar>> estimate_curvatures(const TriMeshT<Scalar>& mesh, Method method,
                                                         int n_threads = 1) {
    const int nv = mesh.num_vertices();
    if (nv == 0) throw EmptyMesh();
    std::vector<CurvatureResult<Scalar>> results(static_cast<std::size_t>(nv));

    if (method == Method::GaussGrad) {
        const auto field_pair = gauss_map_field_lenient(mesh, n_threads);
        const NormalField<Scalar>& field = field_pair.first;
        parallel_for(nv, n_threads, [&](std::int64_t vi) {
            const int v = static_cast<int>(vi);
            auto& slot = results[static_cast<std::size_t>(v)];
            try {
                slot = gauss_grad_estimate(mesh, field, v);
                // NaN normals of a degraded neighbor poison the gradients.
                if (!std::isfinite(slot.gaussian) || !std::isfinite(slot.mean))
                    slot = degraded_result(mesh, v, method);
            } catch (const Error&) {
                slot = degraded_result(mesh, v, method);
            }
        });
        return results;
    }

    parallel_for(nv, n_threads, [&](std::int64_t vi) {
        const int v = static_cast<int>(vi);
        auto& slot = results[static_cast<std::size_t>(v)];
        try {
            switch (method) {
                case Method::TaubinArea:
                    slot = taubin_estimate(mesh, v, NeighborWeighting::Area);
                    break;
                case Method::TaubinCentroid:
                    slot = taubin_estimate(mesh, v, NeighborWeighting::Centroid);
                    break;
                case Method::ChenSchmitt:
                    slot = chen_schmitt_estimate(mesh, v);
                    break;
                case Method::GaussGrad:
                    break;  // handled above
            }
            if (!std::isfinite(slot.gaussian) || !std::isfinite(slot.mean))
                slot = degraded_result(mesh, v, method);
        } catch (const Error&) {
            slot = degraded_result(mesh, v, method);
        }
    });
    return results;
}

}  // namespace meshcurv
