#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "meshcurv/tri_mesh.hpp"

namespace meshcurv {

/// Planar grid of nx * ny vertices in the xy-plane, wound counterclockwise
/// (normals +z). spacing is the cell edge length.
template <class Scalar = double>
TriMeshT<Scalar> make_grid(int nx, int ny, Scalar spacing = Scalar(1)) {
    MatrixX3<Scalar> vertices(nx * ny, 3);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            vertices.row(j * nx + i) << Scalar(i) * spacing, Scalar(j) * spacing, Scalar(0);
    MatrixX3i faces(2 * (nx - 1) * (ny - 1), 3);
    int f = 0;
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            const int a = j * nx + i, b = j * nx + i + 1;
            const int c = (j + 1) * nx + i + 1, d = (j + 1) * nx + i;
            faces.row(f++) << a, b, c;
            faces.row(f++) << a, c, d;
        }
    return TriMeshT<Scalar>(std::move(vertices), std::move(faces));
}

/// Unit icosahedron subdivided `level` times with vertices projected onto
/// the sphere of the given radius. Outward winding.
template <class Scalar = double>
TriMeshT<Scalar> make_icosphere(int level, Scalar radius = Scalar(1)) {
    const Scalar phi = (Scalar(1) + std::sqrt(Scalar(5))) / Scalar(2);
    std::vector<Vector3<Scalar>> verts = {
        {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1},
    };
    for (auto& v : verts) v = radius * v.normalized();
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };

    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> midpoint;
        auto split = [&](int a, int b) {
            const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            const auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const int idx = static_cast<int>(verts.size());
            verts.push_back(radius * (verts[a] + verts[b]).normalized());
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& [a, b, c] : faces) {
            const int ab = split(a, b), bc = split(b, c), ca = split(c, a);
            next.push_back({a, ab, ca});
            next.push_back({b, bc, ab});
            next.push_back({c, ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    MatrixX3<Scalar> v(static_cast<Eigen::Index>(verts.size()), 3);
    for (std::size_t i = 0; i < verts.size(); ++i) v.row(static_cast<Eigen::Index>(i)) = verts[i].transpose();
    MatrixX3i f(static_cast<Eigen::Index>(faces.size()), 3);
    for (std::size_t i = 0; i < faces.size(); ++i)
        f.row(static_cast<Eigen::Index>(i)) << faces[i][0], faces[i][1], faces[i][2];
    return TriMeshT<Scalar>(std::move(v), std::move(f));
}

/// Open cylinder around the z axis, base at z = 0, outward winding. The two
/// end rings are boundary vertices.
template <class Scalar = double>
TriMeshT<Scalar> make_cylinder(Scalar radius, Scalar height, int n_around, int n_along) {
    const int rings = n_along + 1;
    MatrixX3<Scalar> vertices(rings * n_around, 3);
    for (int k = 0; k < rings; ++k) {
        const Scalar z = height * Scalar(k) / Scalar(n_along);
        for (int j = 0; j < n_around; ++j) {
            const Scalar a = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(j) / Scalar(n_around);
            vertices.row(k * n_around + j) << radius * std::cos(a), radius * std::sin(a), z;
        }
    }
    MatrixX3i faces(2 * n_along * n_around, 3);
    int f = 0;
    for (int k = 0; k < n_along; ++k)
        for (int j = 0; j < n_around; ++j) {
            const int a = k * n_around + j;
            const int b = k * n_around + (j + 1) % n_around;
            const int c = (k + 1) * n_around + (j + 1) % n_around;
            const int d = (k + 1) * n_around + j;
            faces.row(f++) << a, b, c;
            faces.row(f++) << a, c, d;
        }
    return TriMeshT<Scalar>(std::move(vertices), std::move(faces));
}

/// Same geometry with every face winding reversed (normals flip side).
template <class Scalar>
TriMeshT<Scalar> reverse_winding(const TriMeshT<Scalar>& mesh) {
    MatrixX3i faces = mesh.faces();
    faces.col(1).swap(faces.col(2));
    return TriMeshT<Scalar>(mesh.vertices(), std::move(faces));
}

/// Rigidly transformed copy: v -> R v + t.
template <class Scalar>
TriMeshT<Scalar> transformed(const TriMeshT<Scalar>& mesh, const Matrix3<Scalar>& rotation,
                             const Vector3<Scalar>& translation) {
    MatrixX3<Scalar> vertices = mesh.vertices() * rotation.transpose();
    vertices.rowwise() += translation.transpose();
    return TriMeshT<Scalar>(std::move(vertices), mesh.faces());
}

/// Uniformly scaled copy.
template <class Scalar>
TriMeshT<Scalar> scaled(const TriMeshT<Scalar>& mesh, Scalar factor) {
    return TriMeshT<Scalar>(MatrixX3<Scalar>(factor * mesh.vertices()), mesh.faces());
}

}  // namespace meshcurv
