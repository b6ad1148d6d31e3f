#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>

#include "meshcurv/tri_mesh.hpp"

namespace meshcurv {

/// Bivariate polynomial height field f(u, v) = sum c_ij u^i v^j; the surface
/// is the Monge patch (u, v, f(u, v)).
template <class Scalar>
class PolySurfaceT {
public:
    using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    PolySurfaceT() : m_coeffs(Coefficients::Zero(1, 1)) {}

    /// coeffs(i, j) multiplies u^i v^j; shape (degree_u + 1) x (degree_v + 1).
    explicit PolySurfaceT(Coefficients coeffs) : m_coeffs(std::move(coeffs)) {}

    int degree_u() const { return static_cast<int>(m_coeffs.rows()) - 1; }
    int degree_v() const { return static_cast<int>(m_coeffs.cols()) - 1; }
    const Coefficients& coefficients() const { return m_coeffs; }

    /// Horner evaluation in both variables.
    Scalar operator()(Scalar u, Scalar v) const {
        Scalar acc = 0;
        for (Eigen::Index i = m_coeffs.rows() - 1; i >= 0; --i) {
            Scalar row = 0;
            for (Eigen::Index j = m_coeffs.cols() - 1; j >= 0; --j) row = row * v + m_coeffs(i, j);
            acc = acc * u + row;
        }
        return acc;
    }

    Vector3<Scalar> point(Scalar u, Scalar v) const { return {u, v, (*this)(u, v)}; }

    /// Exact partial derivative as a new coefficient grid.
    PolySurfaceT derivative_u() const {
        if (m_coeffs.rows() == 1) return PolySurfaceT();
        Coefficients d(m_coeffs.rows() - 1, m_coeffs.cols());
        for (Eigen::Index i = 0; i + 1 < m_coeffs.rows(); ++i)
            d.row(i) = Scalar(i + 1) * m_coeffs.row(i + 1);
        return PolySurfaceT(std::move(d));
    }

    PolySurfaceT derivative_v() const {
        if (m_coeffs.cols() == 1) return PolySurfaceT();
        Coefficients d(m_coeffs.rows(), m_coeffs.cols() - 1);
        for (Eigen::Index j = 0; j + 1 < m_coeffs.cols(); ++j)
            d.col(j) = Scalar(j + 1) * m_coeffs.col(j + 1);
        return PolySurfaceT(std::move(d));
    }

private:
    Coefficients m_coeffs;
};

using PolySurface = PolySurfaceT<double>;

template <class Scalar>
struct SurfaceCurvature {
    Scalar gaussian, mean;
    Scalar kappa1, kappa2;  ///< kappa1 >= kappa2
    Vector3<Scalar> unit_normal;
};

/// Closed-form curvature of the Monge patch via the fundamental forms with
/// the upward normal (-f_u, -f_v, 1)/sqrt(W). Signs follow the same
/// convention as the mesh estimators: curvature is positive where the
/// surface bends toward the chosen normal, so the bowl u^2 + v^2 has
/// K = 4 and H = +2 at the origin.
template <class Scalar>
SurfaceCurvature<Scalar> analytic_curvature(const PolySurfaceT<Scalar>& surface, Scalar u, Scalar v) {
    const auto su = surface.derivative_u();
    const auto sv = surface.derivative_v();
    const Scalar fu = su(u, v);
    const Scalar fv = sv(u, v);
    const Scalar fuu = su.derivative_u()(u, v);
    const Scalar fuv = su.derivative_v()(u, v);
    const Scalar fvv = sv.derivative_v()(u, v);

    const Scalar w = Scalar(1) + fu * fu + fv * fv;
    const Scalar sqrt_w = std::sqrt(w);

    SurfaceCurvature<Scalar> out;
    out.gaussian = (fuu * fvv - fuv * fuv) / (w * w);
    out.mean = ((Scalar(1) + fv * fv) * fuu - Scalar(2) * fu * fv * fuv + (Scalar(1) + fu * fu) * fvv) /
               (Scalar(2) * w * sqrt_w);
    const Scalar spread = std::sqrt(std::max(out.mean * out.mean - out.gaussian, Scalar(0)));
    out.kappa1 = out.mean + spread;
    out.kappa2 = out.mean - spread;
    out.unit_normal = Vector3<Scalar>(-fu, -fv, Scalar(1)) / sqrt_w;
    return out;
}

}  // namespace meshcurv
