#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "meshcurv/mesh_gen.hpp"
#include "meshcurv/pl_gradient.hpp"
#include "meshcurv/rng.hpp"
#include "support.hpp"

using namespace meshcurv;
using meshcurv::testing::make_flat_fan;
using meshcurv::testing::make_mesh;

namespace {

const TriMesh unit_right = make_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});

}  // namespace

TEST_CASE("evaluate_pl interpolates") {
    const Eigen::Vector3d g(0, 3, 6);
    CHECK(evaluate_pl(unit_right, g, 0, Eigen::Vector3d(0, 0, 0)) == doctest::Approx(0));
    CHECK(evaluate_pl(unit_right, g, 0, Eigen::Vector3d(1, 0, 0)) == doctest::Approx(3));
    CHECK(evaluate_pl(unit_right, g, 0, unit_right.face_centroid(0)) == doctest::Approx(3));

    const Eigen::Vector3d h(2, 4, 99);
    CHECK(evaluate_pl(unit_right, h, 0, Eigen::Vector3d(0.5, 0, 0)) == doctest::Approx(3));

    CHECK_THROWS_AS(evaluate_pl(unit_right, g, 0, Eigen::Vector3d(1, 1, 0)), PointOutsideFace);
    CHECK_THROWS_AS(evaluate_pl(unit_right, g, 0, Eigen::Vector3d(-0.1, 0.1, 0)), PointOutsideFace);
    // Rounding-level excursions below zero stay inside the tolerance...
    CHECK_NOTHROW(evaluate_pl(unit_right, g, 0, Eigen::Vector3d(-5e-11, 0.5, 0)));
    // ...but anything clearly outside does not.
    CHECK_THROWS_AS(evaluate_pl(unit_right, g, 0, Eigen::Vector3d(-1e-9, 0.5, 0)), PointOutsideFace);
}

TEST_CASE("face_gradient solves the edge constraints") {
    SUBCASE("orthonormal edges make the Gram matrix the identity") {
        const Eigen::Vector3d g(0, 2, 3);
        const Eigen::Vector3d grad = face_gradient(unit_right, g, 0, 0);
        CHECK((grad - Eigen::Vector3d(2, 3, 0)).norm() < 1e-14);
    }
    SUBCASE("constant function") {
        const Eigen::Vector3d g(7, 7, 7);
        CHECK(face_gradient(unit_right, g, 0, 1).norm() == 0);
    }
    SUBCASE("general Gram system") {
        const TriMesh mesh = make_mesh({{0, 0, 0}, {2, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
        const Eigen::Vector3d g(0, 2, 3);
        const Eigen::Vector3d grad = face_gradient(mesh, g, 0, 0);
        CHECK((grad - Eigen::Vector3d(1, 3, 0)).norm() < 1e-14);
        // The defining relations of the gradient.
        const Eigen::Vector3d e1 = mesh.vertex(1) - mesh.vertex(0);
        const Eigen::Vector3d e2 = mesh.vertex(2) - mesh.vertex(0);
        CHECK(grad.dot(e1) == doctest::Approx(g[1] - g[0]).epsilon(1e-10));
        CHECK(grad.dot(e2) == doctest::Approx(g[2] - g[0]).epsilon(1e-10));
    }
    SUBCASE("anchor corner does not change the gradient") {
        const TriMesh mesh = make_mesh({{0.3, -1, 2}, {2, 0.1, 0}, {-1, 1, 0.5}}, {{0, 1, 2}});
        const Eigen::Vector3d g(1.5, -0.25, 4);
        const Eigen::Vector3d at0 = face_gradient(mesh, g, 0, 0);
        CHECK((at0 - face_gradient(mesh, g, 0, 1)).norm() < 1e-12);
        CHECK((at0 - face_gradient(mesh, g, 0, 2)).norm() < 1e-12);
    }
    SUBCASE("degenerate edges give a singular Gram matrix") {
        CHECK_THROWS_AS(detail::GramSolver<double>({1, 0, 0}, {2, 0, 0}, 1e-12), SingularGramMatrix);
    }
}

TEST_CASE("centroid weights") {
    SUBCASE("symmetric fan splits evenly") {
        const TriMesh fan = make_flat_fan(6);
        const auto cw = centroid_weights(fan, 0);
        REQUIRE(cw.weights.size() == 6);
        for (int s = 0; s < 6; ++s) CHECK(cw.weights[s] == doctest::Approx(1.0 / 6).epsilon(1e-12));
    }
    SUBCASE("inverse squared centroid distances") {
        // Two faces hanging off vertex 0 with centroids at distances 1 and 2.
        const TriMesh mesh = make_mesh(
            {{0, 0, 0}, {1.5, 0.75, 0}, {1.5, -0.75, 0}, {1.5, 3, 0}, {-1.5, 3, 0}},
            {{0, 1, 2}, {0, 3, 4}});
        CHECK((mesh.face_centroid(0) - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
        CHECK((mesh.face_centroid(1) - Eigen::Vector3d(0, 2, 0)).norm() < 1e-15);
        const auto cw = centroid_weights(mesh, 0);
        CHECK(cw.weights[0] == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(cw.weights[1] == doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("single face") {
        const auto cw = centroid_weights(unit_right, 0);
        CHECK(cw.weights[0] == doctest::Approx(1.0));
    }
    SUBCASE("isolated vertex") {
        const TriMesh mesh = make_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {9, 9, 9}}, {{0, 1, 2}});
        CHECK_THROWS_AS(centroid_weights(mesh, 3), IsolatedVertex);
    }
}

TEST_CASE("weights partition unity on fixtures") {
    const TriMesh fixtures[] = {make_grid(4, 4), make_icosphere(1), make_cylinder(1.0, 2.0, 8, 2)};
    for (const TriMesh& mesh : fixtures)
        for (int v = 0; v < mesh.num_vertices(); ++v)
            CHECK(centroid_weights(mesh, v).weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vertex gradient of a linear function on a planar mesh") {
    const TriMesh grid = make_grid(5, 5);
    Eigen::VectorXd g(grid.num_vertices());
    for (int v = 0; v < grid.num_vertices(); ++v) g[v] = grid.vertex(v).x();
    for (int v = 0; v < grid.num_vertices(); ++v) {
        const Eigen::Vector3d grad = vertex_gradient(grid, g, v);
        CHECK((grad - Eigen::Vector3d(1, 0, 0)).norm() < 1e-12);
    }
    // Constant function.
    g.setConstant(4.2);
    for (int v = 0; v < grid.num_vertices(); ++v) CHECK(vertex_gradient(grid, g, v).norm() < 1e-14);
}

TEST_CASE("linear reproduction on rigidly moved planar fans") {
    auto rng = make_rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Matrix3d rot = meshcurv::testing::random_rotation(rng);
        const Eigen::Vector3d shift(uniform_real(rng, -2, 2), uniform_real(rng, -2, 2),
                                    uniform_real(rng, -2, 2));
        const TriMesh mesh = transformed(make_flat_fan(5 + trial % 4, 0.7), rot, shift);
        const Eigen::Vector3d c = 3.0 * meshcurv::testing::random_unit_vector(rng);
        const double d = uniform_real(rng, -1, 1);
        Eigen::VectorXd g(mesh.num_vertices());
        for (int v = 0; v < mesh.num_vertices(); ++v) g[v] = c.dot(mesh.vertex(v)) + d;

        const Eigen::Vector3d plane_normal = rot.col(2);
        const Eigen::Vector3d expected = c - c.dot(plane_normal) * plane_normal;
        for (int v = 0; v < mesh.num_vertices(); ++v)
            CHECK((vertex_gradient(mesh, g, v) - expected).norm() < 1e-10);
    }
}

TEST_CASE("gradient is linear in the function") {
    const TriMesh mesh = make_icosphere(1);
    auto rng = make_rng(7);
    Eigen::VectorXd g(mesh.num_vertices()), h(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        g[v] = uniform_real(rng, -1, 1);
        h[v] = uniform_real(rng, -1, 1);
    }
    const double alpha = uniform_real(rng, -3, 3), beta = uniform_real(rng, -3, 3);
    const Eigen::VectorXd combo = alpha * g + beta * h;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const Eigen::Vector3d lhs = vertex_gradient(mesh, combo, v);
        const Eigen::Vector3d rhs =
            alpha * vertex_gradient(mesh, g, v) + beta * vertex_gradient(mesh, h, v);
        CHECK((lhs - rhs).norm() < 1e-10);
    }
}

TEST_CASE("face gradients lie in their face plane") {
    const TriMesh mesh = make_icosphere(1);
    auto rng = make_rng(99);
    Eigen::VectorXd g(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); ++v) g[v] = uniform_real(rng, -2, 2);
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const Eigen::Vector3d grad = face_gradient(mesh, g, f, mesh.faces()(f, 0));
        CHECK(std::abs(grad.dot(mesh.face_normal(f))) <= 1e-10 * std::max(grad.norm(), 1.0));
    }
}

TEST_CASE("icosphere z-coordinate gradient matches the tangential projection") {
    const TriMesh mesh = make_icosphere(3);
    Eigen::VectorXd g(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); ++v) g[v] = mesh.vertex(v).z();
    const Eigen::Vector3d ez(0, 0, 1);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const Eigen::Vector3d p = mesh.vertex(v);
        if (std::abs(p.z()) > 0.2) continue;  // near-equator vertices
        const Eigen::Vector3d expected = ez - ez.dot(p) * p;
        CHECK((vertex_gradient(mesh, g, v) - expected).norm() < 5e-2);
    }
}

TEST_CASE("vertex normals") {
    SUBCASE("flat fan") {
        const TriMesh fan = make_flat_fan(7);
        CHECK((vertex_normal(fan, 0) - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
    }
    SUBCASE("square pyramid apex cancels laterally") {
        const TriMesh pyramid = make_mesh(
            {{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}, {0, 0, 1}},
            {{4, 0, 1}, {4, 1, 2}, {4, 2, 3}, {4, 3, 0}});
        const Eigen::Vector3d n = vertex_normal(pyramid, 4);
        CHECK(n.x() == doctest::Approx(0).epsilon(1e-14));
        CHECK(n.y() == doctest::Approx(0).epsilon(1e-14));
        CHECK(n.z() == doctest::Approx(1));
    }
    SUBCASE("icosphere normal points along the position") {
        const TriMesh mesh = make_icosphere(3);
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            const Eigen::Vector3d n = vertex_normal(mesh, v);
            CHECK(n.norm() == doctest::Approx(1).epsilon(1e-12));
            CHECK(meshcurv::testing::line_angle(n, mesh.vertex(v)) < 1e-2);
            CHECK(n.dot(mesh.vertex(v)) > 0);
        }
    }
    SUBCASE("isolated vertex") {
        const TriMesh mesh = make_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {9, 9, 9}}, {{0, 1, 2}});
        CHECK_THROWS_AS(vertex_normal(mesh, 3), IsolatedVertex);
    }
}
