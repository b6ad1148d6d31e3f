#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "meshcurv/errors.hpp"

namespace meshcurv {

template <class Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <class Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <class Scalar>
using MatrixX3 = Eigen::Matrix<Scalar, Eigen::Dynamic, 3>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using MatrixX3i = Eigen::Matrix<int, Eigen::Dynamic, 3>;

/// Faces whose cross-product norm (twice the area) falls below
/// kAreaEpsFactor * (bounding box diagonal)^2 are rejected as degenerate;
/// the cutoff scales with the mesh so it is unit-free.
inline constexpr double kAreaEpsFactor = 1e-12;

/// One-ring of a vertex. Neighbors are stored in face-induced cyclic order
/// when the incident faces form a disk, in first-appearance order otherwise;
/// nothing downstream depends on the order, it only keeps output reproducible.
struct VertexStar {
    std::vector<int> neighbors;
    std::vector<int> incident_faces;  ///< ascending face indices
    bool is_boundary = false;         ///< true unless the faces close a cycle around the vertex
};

template <class Scalar>
struct FaceGeometry {
    Scalar area;
    Vector3<Scalar> centroid;
    Vector3<Scalar> unit_normal;
};

/// Area, centroid and unit normal of the triangle (a, b, c); the winding
/// a -> b -> c picks the normal side. eps_area is the degeneracy cutoff on
/// the cross-product norm.
template <class Scalar>
FaceGeometry<Scalar> triangle_geometry(const Vector3<Scalar>& a, const Vector3<Scalar>& b,
                                       const Vector3<Scalar>& c, Scalar eps_area) {
    const Vector3<Scalar> cross = (b - a).cross(c - a);
    const Scalar cross_norm = cross.norm();
    if (!(cross_norm >= eps_area) || cross_norm == Scalar(0)) {
        throw DegenerateFace("triangle is degenerate (cross-product norm " +
                             std::to_string(static_cast<double>(cross_norm)) + ")");
    }
    return {cross_norm / Scalar(2), (a + b + c) / Scalar(3), cross / cross_norm};
}

/// Immutable indexed triangle mesh with one-ring adjacency and cached
/// per-face geometry. All queries are read-only and safe to call from
/// multiple threads once construction finished.
template <class Scalar>
class TriMeshT {
public:
    using Point = Vector3<Scalar>;

    TriMeshT() = default;

    /// Validates every face (indices in range, distinct vertices, area above
    /// the scale-invariant cutoff) and precomputes face geometry and vertex
    /// stars. Adjacency queries afterwards cost O(vertex degree).
    TriMeshT(MatrixX3<Scalar> vertices, MatrixX3i faces)
        : m_vertices(std::move(vertices)), m_faces(std::move(faces)) {
        compute_bbox();
        validate_and_cache_faces();
        build_stars();
    }

    int num_vertices() const { return static_cast<int>(m_vertices.rows()); }
    int num_faces() const { return static_cast<int>(m_faces.rows()); }

    const MatrixX3<Scalar>& vertices() const { return m_vertices; }
    const MatrixX3i& faces() const { return m_faces; }

    Point vertex(int v) const { return m_vertices.row(v).transpose(); }
    Eigen::RowVector3i face(int f) const { return m_faces.row(f); }

    const VertexStar& star(int v) const { return m_stars[static_cast<std::size_t>(v)]; }

    Scalar face_area(int f) const { return m_face_areas[f]; }
    Point face_centroid(int f) const { return m_face_centroids.row(f).transpose(); }
    Point face_normal(int f) const { return m_face_normals.row(f).transpose(); }

    FaceGeometry<Scalar> face_geometry(int f) const {
        if (f < 0 || f >= num_faces())
            throw IndexOutOfRange("face index " + std::to_string(f) + " out of range");
        return {face_area(f), face_centroid(f), face_normal(f)};
    }

    /// Degeneracy cutoff on cross-product norms, kAreaEpsFactor * diag^2.
    Scalar area_eps() const { return m_area_eps; }
    Scalar bbox_diagonal() const { return m_bbox_diag; }

private:
    void compute_bbox() {
        if (m_vertices.rows() == 0) {
            m_bbox_diag = Scalar(0);
            m_area_eps = Scalar(0);
            return;
        }
        const Vector3<Scalar> lo = m_vertices.colwise().minCoeff().transpose();
        const Vector3<Scalar> hi = m_vertices.colwise().maxCoeff().transpose();
        m_bbox_diag = (hi - lo).norm();
        m_area_eps = Scalar(kAreaEpsFactor) * m_bbox_diag * m_bbox_diag;
    }

    void validate_and_cache_faces() {
        const int nf = num_faces();
        const int nv = num_vertices();
        m_face_areas.resize(nf);
        m_face_centroids.resize(nf, 3);
        m_face_normals.resize(nf, 3);
        for (int f = 0; f < nf; ++f) {
            const int i = m_faces(f, 0), j = m_faces(f, 1), k = m_faces(f, 2);
            if (i < 0 || i >= nv || j < 0 || j >= nv || k < 0 || k >= nv)
                throw IndexOutOfRange("face " + std::to_string(f) + " references a vertex outside [0, " +
                                      std::to_string(nv) + ")");
            if (i == j || j == k || i == k)
                throw DuplicateVertexInFace("face " + std::to_string(f) + " repeats a vertex index");
            FaceGeometry<Scalar> geom;
            try {
                geom = triangle_geometry<Scalar>(vertex(i), vertex(j), vertex(k), m_area_eps);
            } catch (const DegenerateFace&) {
                throw DegenerateFace("face " + std::to_string(f) + " has (near) zero area");
            }
            m_face_areas[f] = geom.area;
            m_face_centroids.row(f) = geom.centroid.transpose();
            m_face_normals.row(f) = geom.unit_normal.transpose();
        }
    }

    void build_stars() {
        const int nv = num_vertices();
        m_stars.assign(static_cast<std::size_t>(nv), VertexStar{});
        // Per vertex: the directed edge opposite to it in each incident face,
        // oriented with the face winding.
        std::vector<std::vector<std::pair<int, int>>> wedges(static_cast<std::size_t>(nv));
        for (int f = 0; f < num_faces(); ++f) {
            const int c[3] = {m_faces(f, 0), m_faces(f, 1), m_faces(f, 2)};
            for (int s = 0; s < 3; ++s) {
                const int v = c[s];
                wedges[static_cast<std::size_t>(v)].emplace_back(c[(s + 1) % 3], c[(s + 2) % 3]);
                m_stars[static_cast<std::size_t>(v)].incident_faces.push_back(f);
            }
        }
        for (int v = 0; v < nv; ++v) order_star(v, wedges[static_cast<std::size_t>(v)]);
    }

    /// Chains the opposite edges a->b around v. A single closed cycle marks
    /// an interior disk vertex, a single open chain a boundary one; anything
    /// else (non-manifold star) falls back to first-appearance order.
    void order_star(int v, const std::vector<std::pair<int, int>>& edges) {
        VertexStar& star = m_stars[static_cast<std::size_t>(v)];
        if (edges.empty()) {
            star.is_boundary = true;  // no faces, certainly no closed cycle
            return;
        }

        std::unordered_map<int, int> succ;
        std::unordered_map<int, int> indegree;
        bool chainable = true;
        for (const auto& [from, to] : edges) {
            if (!succ.emplace(from, to).second) {
                chainable = false;
                break;
            }
            ++indegree[to];
        }

        if (chainable) {
            int start = -1;
            int n_sources = 0;
            for (const auto& [node, succ_to] : succ) {
                (void)succ_to;
                if (indegree.find(node) == indegree.end()) {
                    ++n_sources;
                    start = node;
                }
            }
            const bool closed = (n_sources == 0);
            if (closed) {
                // Deterministic cycle start: smallest neighbor index.
                start = succ.begin()->first;
                for (const auto& [node, to] : succ) {
                    (void)to;
                    start = std::min(start, node);
                }
            }
            if ((closed || n_sources == 1) && walk_chain(star, succ, start, closed)) {
                star.is_boundary = !closed;
                return;
            }
        }

        // Fallback: first-appearance order over the incident faces.
        star.neighbors.clear();
        for (const auto& [from, to] : edges) {
            if (std::find(star.neighbors.begin(), star.neighbors.end(), from) == star.neighbors.end())
                star.neighbors.push_back(from);
            if (std::find(star.neighbors.begin(), star.neighbors.end(), to) == star.neighbors.end())
                star.neighbors.push_back(to);
        }
        star.is_boundary = true;
    }

    static bool walk_chain(VertexStar& star, const std::unordered_map<int, int>& succ, int start,
                           bool closed) {
        star.neighbors.clear();
        star.neighbors.push_back(start);
        int current = start;
        while (true) {
            const auto it = succ.find(current);
            if (it == succ.end()) break;
            current = it->second;
            if (current == start) break;
            if (star.neighbors.size() > succ.size() + 1) return false;  // revisit, not a chain
            star.neighbors.push_back(current);
        }
        const std::size_t expected = closed ? succ.size() : succ.size() + 1;
        return star.neighbors.size() == expected;
    }

    MatrixX3<Scalar> m_vertices;
    MatrixX3i m_faces;
    std::vector<VertexStar> m_stars;
    VectorX<Scalar> m_face_areas;
    MatrixX3<Scalar> m_face_centroids;
    MatrixX3<Scalar> m_face_normals;
    Scalar m_bbox_diag = 0;
    Scalar m_area_eps = 0;
};

using TriMesh = TriMeshT<double>;

/// Two faces traversing their shared edge in the same direction, i.e. with
/// opposite normal sides.
struct EdgeConflict {
    int v0, v1;          ///< edge endpoints, v0 < v1
    int face_a, face_b;  ///< conflicting faces, face_a < face_b
};

/// Winding consistency report: empty means every shared edge is traversed in
/// opposite directions by its two faces. This only reports; no re-orientation
/// is attempted.
template <class Scalar>
std::vector<EdgeConflict> check_orientation(const TriMeshT<Scalar>& mesh) {
    struct EdgeUse {
        int face;
        bool forward;  // traversed from min(v0,v1) to max(v0,v1)
    };
    std::unordered_map<std::uint64_t, std::vector<EdgeUse>> uses;
    uses.reserve(static_cast<std::size_t>(mesh.num_faces()) * 3);
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const int c[3] = {mesh.faces()(f, 0), mesh.faces()(f, 1), mesh.faces()(f, 2)};
        for (int s = 0; s < 3; ++s) {
            const int a = c[s], b = c[(s + 1) % 3];
            const int lo = std::min(a, b), hi = std::max(a, b);
            const std::uint64_t key =
                (static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo)) << 32) |
                static_cast<std::uint32_t>(hi);
            uses[key].push_back({f, a == lo});
        }
    }
    std::vector<EdgeConflict> conflicts;
    for (const auto& [key, list] : uses) {
        const int lo = static_cast<int>(key >> 32);
        const int hi = static_cast<int>(key & 0xffffffffu);
        for (std::size_t p = 0; p < list.size(); ++p)
            for (std::size_t q = p + 1; q < list.size(); ++q)
                if (list[p].forward == list[q].forward)
                    conflicts.push_back({lo, hi, std::min(list[p].face, list[q].face),
                                         std::max(list[p].face, list[q].face)});
    }
    std::sort(conflicts.begin(), conflicts.end(), [](const EdgeConflict& x, const EdgeConflict& y) {
        return std::tie(x.v0, x.v1, x.face_a, x.face_b) < std::tie(y.v0, y.v1, y.face_a, y.face_b);
    });
    return conflicts;
}

}  // namespace meshcurv
