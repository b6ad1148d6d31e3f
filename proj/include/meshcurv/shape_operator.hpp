#pragma once

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "meshcurv/errors.hpp"
#include "meshcurv/tri_mesh.hpp"

namespace meshcurv {

inline constexpr double kUnitNormalEps = 1e-9;

/// Threshold on |kappa1 - kappa2| (relative to max(1, |kappa1|)) below which
/// principal directions are reported as indeterminate.
inline constexpr double kUmbilicEps = 1e-9;

enum class Method { GaussGrad, TaubinArea, TaubinCentroid, ChenSchmitt };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::GaussGrad: return "gauss-grad";
        case Method::TaubinArea: return "taubin-area";
        case Method::TaubinCentroid: return "taubin-centroid";
        case Method::ChenSchmitt: return "chen-schmitt";
    }
    return "?";
}

inline std::optional<Method> method_from_name(std::string_view name) {
    if (name == "gauss-grad") return Method::GaussGrad;
    if (name == "taubin-area") return Method::TaubinArea;
    if (name == "taubin-centroid") return Method::TaubinCentroid;
    if (name == "chen-schmitt") return Method::ChenSchmitt;
    return std::nullopt;
}

/// Right-handed orthonormal frame (e1, e2, n) of a tangent plane.
template <class Scalar>
struct TangentBasis {
    Vector3<Scalar> e1, e2, n;
};

/// Deterministic tangent frame completion: seed with the global axis that has
/// the smallest |component| in n (well-conditioned for every n), project it
/// against n and close the frame with e2 = n x e1.
template <class Scalar>
TangentBasis<Scalar> tangent_basis(const Vector3<Scalar>& normal) {
    // Written so that a NaN norm also lands in the error branch.
    if (!(std::abs(normal.norm() - Scalar(1)) <= Scalar(kUnitNormalEps)))
        throw NonUnitNormal("tangent_basis requires a unit normal");
    int axis = 0;
    if (std::abs(normal[1]) < std::abs(normal[axis])) axis = 1;
    if (std::abs(normal[2]) < std::abs(normal[axis])) axis = 2;
    Vector3<Scalar> seed = Vector3<Scalar>::Zero();
    seed[axis] = Scalar(1);
    const Vector3<Scalar> e1 = (seed - seed.dot(normal) * normal).normalized();
    return {e1, normal.cross(e1), normal};
}

/// The differential of the Gauss map restricted to a tangent frame, as the
/// 2x2 matrix a_ij = <e_i, dN e_j>.
template <class Scalar>
struct ShapeOperator2 {
    Eigen::Matrix<Scalar, 2, 2> a;
    TangentBasis<Scalar> basis;
    bool symmetrized = false;
    /// |a12 - a21| of the raw projection; the self-adjointness the exact
    /// operator would have is only approximate for estimates, and this
    /// residual is the per-vertex quality diagnostic.
    Scalar skew = 0;
};

/// Projects a 3x3 Gauss map differential onto the frame. Symmetrizing
/// replaces A by (A + A^T)/2, the orthogonal projection onto the symmetric
/// model class; the trace (hence H) is unchanged.
template <class Scalar>
ShapeOperator2<Scalar> project_shape_operator(const Matrix3<Scalar>& dn,
                                              const TangentBasis<Scalar>& basis,
                                              bool symmetrize = true) {
    ShapeOperator2<Scalar> op;
    op.basis = basis;
    op.a(0, 0) = basis.e1.dot(dn * basis.e1);
    op.a(0, 1) = basis.e1.dot(dn * basis.e2);
    op.a(1, 0) = basis.e2.dot(dn * basis.e1);
    op.a(1, 1) = basis.e2.dot(dn * basis.e2);
    op.skew = std::abs(op.a(0, 1) - op.a(1, 0));
    if (symmetrize) {
        const Scalar off = (op.a(0, 1) + op.a(1, 0)) / Scalar(2);
        op.a(0, 1) = off;
        op.a(1, 0) = off;
        op.symmetrized = true;
    }
    return op;
}

/// Eigen-structure of a symmetric 2x2 matrix [[a, c], [c, b]], closed form.
/// Eigenvalues are sorted descending; eigenvectors form a right-handed
/// orthonormal pair.
template <class Scalar>
struct SymEigen2 {
    Scalar l1, l2;
    Eigen::Matrix<Scalar, 2, 1> u1, u2;
};

template <class Scalar>
SymEigen2<Scalar> sym_eigen2(Scalar a, Scalar c, Scalar b) {
    SymEigen2<Scalar> out;
    const Scalar half_trace = (a + b) / Scalar(2);
    const Scalar disc = std::hypot((a - b) / Scalar(2), c);
    out.l1 = half_trace + disc;
    out.l2 = half_trace - disc;
    // Two algebraically equivalent eigenvector formulas; pick the better
    // conditioned one.
    Eigen::Matrix<Scalar, 2, 1> cand1(c, out.l1 - a);
    Eigen::Matrix<Scalar, 2, 1> cand2(out.l1 - b, c);
    Eigen::Matrix<Scalar, 2, 1> u = cand1.squaredNorm() >= cand2.squaredNorm() ? cand1 : cand2;
    if (u.squaredNorm() == Scalar(0)) u = Eigen::Matrix<Scalar, 2, 1>(1, 0);  // multiple of identity
    out.u1 = u.normalized();
    out.u2 = Eigen::Matrix<Scalar, 2, 1>(-out.u1[1], out.u1[0]);
    return out;
}

/// Per-vertex curvature data. Sign convention: the shape operator is dN
/// itself, its eigenvalues are -kappa, K = det and H = -trace/2; an
/// outward-oriented unit sphere therefore has K = 1 and H = kappa = -1.
template <class Scalar>
struct CurvatureResult {
    Scalar gaussian = 0;  ///< K, 1/length^2
    Scalar mean = 0;      ///< H, 1/length
    Scalar kappa1 = 0;    ///< principal curvatures, kappa1 >= kappa2
    Scalar kappa2 = 0;
    Vector3<Scalar> dir1 = Vector3<Scalar>::Zero();
    Vector3<Scalar> dir2 = Vector3<Scalar>::Zero();
    Method method = Method::GaussGrad;
    bool boundary = false;
    bool degraded = false;            ///< curvatures are NaN, estimation failed at this vertex
    bool dirs_indeterminate = false;  ///< umbilic: directions are an arbitrary frame
    Scalar skew = 0;                  ///< raw shape-operator asymmetry (gauss-grad only)
};

/// Breaks the +-v eigenvector ambiguity: flip so the largest-magnitude
/// component is positive.
template <class Scalar>
Vector3<Scalar> canonical_direction(const Vector3<Scalar>& v) {
    int idx = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(v[i]) > std::abs(v[idx])) idx = i;
    return v[idx] < Scalar(0) ? Vector3<Scalar>(-v) : v;
}

/// K, H, principal curvatures and directions of a symmetrized shape
/// operator. With eigenvalues l of A, kappa = -l; the smaller eigenvalue
/// carries kappa1.
template <class Scalar>
CurvatureResult<Scalar> curvatures_from_shape_operator(const ShapeOperator2<Scalar>& op) {
    assert(op.symmetrized);
    CurvatureResult<Scalar> res;
    res.gaussian = op.a(0, 0) * op.a(1, 1) - op.a(0, 1) * op.a(1, 0);
    res.mean = -(op.a(0, 0) + op.a(1, 1)) / Scalar(2);
    const SymEigen2<Scalar> eig = sym_eigen2(op.a(0, 0), op.a(0, 1), op.a(1, 1));
    res.kappa1 = -eig.l2;
    res.kappa2 = -eig.l1;
    res.dir1 = canonical_direction<Scalar>(eig.u2[0] * op.basis.e1 + eig.u2[1] * op.basis.e2);
    res.dir2 = canonical_direction<Scalar>(eig.u1[0] * op.basis.e1 + eig.u1[1] * op.basis.e2);
    res.skew = op.skew;
    res.dirs_indeterminate =
        std::abs(res.kappa1 - res.kappa2) < Scalar(kUmbilicEps) * std::max(Scalar(1), std::abs(res.kappa1));
    return res;
}

}  // namespace meshcurv
