#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "meshcurv/rng.hpp"
#include "meshcurv/tri_mesh.hpp"

namespace meshcurv::testing {

inline TriMesh make_mesh(std::initializer_list<Eigen::Vector3d> points,
                         std::initializer_list<Eigen::Vector3i> faces) {
    MatrixX3<double> v(static_cast<Eigen::Index>(points.size()), 3);
    Eigen::Index i = 0;
    for (const auto& p : points) v.row(i++) = p.transpose();
    MatrixX3i f(static_cast<Eigen::Index>(faces.size()), 3);
    i = 0;
    for (const auto& face : faces) f.row(i++) = face.transpose();
    return TriMesh(std::move(v), std::move(f));
}

/// Planar fan around the origin: n spokes of the given radius in the
/// xy-plane, counterclockwise winding. Center vertex is index 0.
inline TriMesh make_flat_fan(int n, double radius = 1.0) {
    MatrixX3<double> v(n + 1, 3);
    v.row(0).setZero();
    for (int i = 0; i < n; ++i) {
        const double a = 2 * std::numbers::pi * i / n;
        v.row(i + 1) << radius * std::cos(a), radius * std::sin(a), 0.0;
    }
    MatrixX3i f(n, 3);
    for (int i = 0; i < n; ++i) f.row(i) << 0, i + 1, (i + 1) % n + 1;
    return TriMesh(std::move(v), std::move(f));
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
    Eigen::Quaterniond q(uniform_real(rng, -1, 1), uniform_real(rng, -1, 1), uniform_real(rng, -1, 1),
                         uniform_real(rng, -1, 1));
    while (q.norm() < 1e-3)
        q = Eigen::Quaterniond(uniform_real(rng, -1, 1), uniform_real(rng, -1, 1),
                               uniform_real(rng, -1, 1), uniform_real(rng, -1, 1));
    q.normalize();
    return q.toRotationMatrix();
}

inline Eigen::Vector3d random_unit_vector(std::mt19937_64& rng) {
    Eigen::Vector3d v(uniform_real(rng, -1, 1), uniform_real(rng, -1, 1), uniform_real(rng, -1, 1));
    while (v.norm() < 1e-3)
        v = Eigen::Vector3d(uniform_real(rng, -1, 1), uniform_real(rng, -1, 1), uniform_real(rng, -1, 1));
    return v.normalized();
}

/// Smallest angle between the lines spanned by a and b (sign-insensitive).
inline double line_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    const double c = std::min(1.0, std::abs(a.normalized().dot(b.normalized())));
    return std::acos(c);
}

inline double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace meshcurv::testing
