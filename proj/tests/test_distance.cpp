#include <doctest.h>

#include <tindb/executor.hpp>
#include <tindb/kernels.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

using namespace tindb;
using namespace tindb::kernels;
using namespace tindb::fixtures;
using tindb::oracle::random_q_sample;
using tindb::oracle::segment_segment_grid_distance;
using tindb::oracle::segment_triangle_grid_distance;

namespace {

// Shared tolerance against the grid oracles: the refined grid pins the
// squared objective to ~1e-18, so distances agree to ~1e-9 absolute.
constexpr double kOracleTol = 1e-7;

bool close(double a, double b, double tol = kOracleTol) {
    return std::fabs(a - b) <= tol * (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace

TEST_CASE("segment segment distance known cases") {
    // Parallel horizontal segments one apart.
    LineSegment a{{0, 0, 0}, {1, 0, 0}};
    LineSegment b{{0, 1, 0}, {1, 1, 0}};
    auto r = segment_segment_distance(a, b);
    CHECK(r.distance == doctest::Approx(1.0));

    // Skew crossing: zero distance at midpoints.
    LineSegment c{{-1, 0, 0}, {1, 0, 0}};
    LineSegment d{{0, -1, 0}, {0, 1, 0}};
    r = segment_segment_distance(c, d);
    CHECK(r.distance == doctest::Approx(0.0));
    CHECK(r.closest_on_a.x == doctest::Approx(0.0));
    CHECK(r.closest_on_a.y == doctest::Approx(0.0));

    // Disjoint colinear segments: gap between inner endpoints.
    LineSegment e{{0, 0, 0}, {1, 0, 0}};
    LineSegment f{{3, 0, 0}, {5, 0, 0}};
    r = segment_segment_distance(e, f);
    CHECK(r.distance == doctest::Approx(2.0));
    CHECK(r.closest_on_a.x == doctest::Approx(1.0));
    CHECK(r.closest_on_b.x == doctest::Approx(3.0));

    // Endpoint to interior.
    LineSegment g{{0, 2, 0}, {0, 5, 0}};
    LineSegment h{{-3, 0, 0}, {3, 0, 0}};
    r = segment_segment_distance(g, h);
    CHECK(r.distance == doctest::Approx(2.0));
    CHECK(r.params.has_value());
    CHECK(r.params->t == doctest::Approx(0.0));
}

TEST_CASE("segment segment distance handles degenerate inputs") {
    LineSegment point{{1, 1, 1}, {1, 1, 1}};
    LineSegment seg{{0, 0, 0}, {2, 0, 0}};
    auto r = segment_segment_distance(point, seg);
    CHECK(r.distance == doctest::Approx(std::sqrt(2.0)));

    auto r2 = segment_segment_distance(point, point);
    CHECK(r2.distance == 0.0);
}

TEST_CASE("segment segment distance is symmetric") {
    Rng rng(41);
    for (int i = 0; i < 64; ++i) {
        auto a = random_segment(rng);
        auto b = random_segment(rng);
        auto r1 = segment_segment_distance(a, b);
        auto r2 = segment_segment_distance(b, a);
        CHECK(close(r1.distance, r2.distance, 1e-12));
    }
}

TEST_CASE("segment segment distance matches the grid oracle") {
    Rng rng(42);
    for (int i = 0; i < 48; ++i) {
        auto a = random_segment(rng);
        auto b = random_segment(rng);
        auto r = segment_segment_distance(a, b);
        double oracle = segment_segment_grid_distance(a, b);
        CAPTURE(i);
        CHECK(close(r.distance, oracle, 1e-9));
        // The reported witness points must realize the distance.
        CHECK(close(norm(r.closest_on_a - r.closest_on_b), r.distance, 1e-9));
    }
}

TEST_CASE("point triangle distance covers all regions") {
    Triangle tri{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};

    // Above the interior: plane distance.
    auto r = point_triangle_distance({0.25, 0.25, 2.0}, tri);
    CHECK(r.distance == doctest::Approx(2.0));
    CHECK(r.closest_on_b.x == doctest::Approx(0.25));
    CHECK(r.closest_on_b.y == doctest::Approx(0.25));
    CHECK(r.params.has_value());
    CHECK(r.params->u == doctest::Approx(0.25));
    CHECK(r.params->v == doctest::Approx(0.25));

    // Beyond the hypotenuse: nearest point on edge v1 v2.
    r = point_triangle_distance({1, 1, 1}, tri);
    CHECK(r.distance == doctest::Approx(std::sqrt(1.5)));
    CHECK(r.closest_on_b.x == doctest::Approx(0.5));
    CHECK(r.closest_on_b.y == doctest::Approx(0.5));

    // Vertex regions.
    r = point_triangle_distance({-1, -1, 0}, tri);
    CHECK(r.distance == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.closest_on_b.x == doctest::Approx(0.0));
    r = point_triangle_distance({2.5, -1, 0}, tri);
    CHECK(r.distance == doctest::Approx(std::sqrt(1.5 * 1.5 + 1.0)));
    r = point_triangle_distance({-1, 2.5, 0}, tri);
    CHECK(r.distance == doctest::Approx(std::sqrt(1.5 * 1.5 + 1.0)));

    // Edge regions.
    r = point_triangle_distance({0.5, -2, 0}, tri);
    CHECK(r.distance == doctest::Approx(2.0));
    CHECK(r.closest_on_b.x == doctest::Approx(0.5));
    r = point_triangle_distance({-2, 0.5, 0}, tri);
    CHECK(r.distance == doctest::Approx(2.0));
    CHECK(r.closest_on_b.y == doctest::Approx(0.5));

    // On the triangle itself.
    r = point_triangle_distance({0.25, 0.5, 0}, tri);
    CHECK(r.distance == doctest::Approx(0.0));
}

TEST_CASE("point triangle distance matches sampling on random pairs") {
    Rng rng(43);
    for (int i = 0; i < 48; ++i) {
        auto tri = random_triangle(rng);
        auto p = random_point(rng);
        auto r = point_triangle_distance(p, tri);
        // The kernel may never exceed any sampled surface point and
        // must equal the reported witness distance.
        LineSegment still{p, p};
        double best_sample = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 4096; ++k) {
            best_sample = std::min(best_sample, random_q_sample(rng, still, tri));
        }
        CAPTURE(i);
        CHECK(r.distance <= std::sqrt(best_sample) + 1e-12);
        CHECK(close(norm(p - r.closest_on_b), r.distance, 1e-9));
        // Witness must lie inside the triangle's barycentric domain.
        REQUIRE(r.params.has_value());
        CHECK(r.params->u >= -1e-12);
        CHECK(r.params->v >= -1e-12);
        CHECK(r.params->u + r.params->v <= 1.0 + 1e-12);
    }
}

TEST_CASE("segment triangle distance known cases") {
    Triangle tri{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};

    // Pierces the interior: distance zero at the crossing.
    LineSegment through{{0.2, 0.2, -1}, {0.2, 0.2, 1}};
    auto r = segment_triangle_distance(through, tri);
    CHECK(r.distance == doctest::Approx(0.0));
    REQUIRE(r.params.has_value());
    CHECK(r.params->t == doctest::Approx(0.5));
    CHECK(r.params->u == doctest::Approx(0.2));
    CHECK(r.params->v == doctest::Approx(0.2));

    // Parallel above: plane height.
    LineSegment above{{0.1, 0.1, 3}, {0.4, 0.4, 3}};
    r = segment_triangle_distance(above, tri);
    CHECK(r.distance == doctest::Approx(3.0));

    // Off to the side: nearest to an edge.
    LineSegment beside{{2, 0, -1}, {2, 0, 1}};
    r = segment_triangle_distance(beside, tri);
    CHECK(r.distance == doctest::Approx(1.0));
    CHECK(r.closest_on_b.x == doctest::Approx(1.0));
    CHECK(r.closest_on_b.y == doctest::Approx(0.0));

    // Endpoint nearest the face interior.
    LineSegment poke{{0.25, 0.25, 0.5}, {0.25, 0.25, 4}};
    r = segment_triangle_distance(poke, tri);
    CHECK(r.distance == doctest::Approx(0.5));
    REQUIRE(r.params.has_value());
    CHECK(r.params->t == doctest::Approx(0.0));
}

TEST_CASE("zero length segments fall back to the point kernel") {
    Triangle tri{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    LineSegment still{{0.25, 0.25, 2.0}, {0.25, 0.25, 2.0}};
    auto r = segment_triangle_distance(still, tri);
    CHECK(r.distance == doctest::Approx(2.0));
    REQUIRE(r.params.has_value());
    CHECK(r.params->t == 0.0);
}

TEST_CASE("segment triangle distance matches the grid oracle") {
    Rng rng(44);
    for (int i = 0; i < 40; ++i) {
        auto tri = random_triangle(rng);
        auto seg = random_segment(rng);
        auto r = segment_triangle_distance(seg, tri);
        double oracle = segment_triangle_grid_distance(seg, tri);
        CAPTURE(i);
        CHECK(close(r.distance, oracle));
        CHECK(close(norm(r.closest_on_a - r.closest_on_b), r.distance, 1e-9));
    }
}

TEST_CASE("segment triangle distance is rigid motion invariant") {
    Triangle tri{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    LineSegment seg{{2, -1, 0.5}, {3, 1, 1.0}};
    double base = segment_triangle_distance(seg, tri).distance;
    // Axis permutation plus translation is an exact rigid motion.
    auto rigid = [](Point3 p) {
        return Point3{p.z + 10.0, p.x - 4.0, p.y + 1.5};
    };
    Triangle tri2{rigid(tri.v0), rigid(tri.v1), rigid(tri.v2)};
    LineSegment seg2{rigid(seg.p0), rigid(seg.p1)};
    double moved = segment_triangle_distance(seg2, tri2).distance;
    CHECK(base == doctest::Approx(moved).epsilon(1e-12));
}

TEST_CASE("distance from point to cube mesh") {
    auto cube = unit_cube();
    auto cfg = ExecutorConfig::sequential();

    // Outside along +x: nearest face is x = 1.
    auto r = distance_to_mesh(Point3{3, 0.5, 0.5}, cube, cfg);
    CHECK(r.distance == doctest::Approx(2.0));

    // The mesh is a surface: the center is 0.5 away from every face.
    r = distance_to_mesh(Point3{0.5, 0.5, 0.5}, cube, cfg);
    CHECK(r.distance == doctest::Approx(0.5));

    // On the surface.
    r = distance_to_mesh(Point3{1.0, 0.5, 0.5}, cube, cfg);
    CHECK(r.distance == doctest::Approx(0.0));

    // Nearest a corner.
    r = distance_to_mesh(Point3{2, 2, 2}, cube, cfg);
    CHECK(r.distance == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("distance from segment to cube mesh") {
    auto cube = unit_cube();
    auto cfg = ExecutorConfig::sequential();

    LineSegment s{{2, 0.5, 0.5}, {4, 0.5, 0.5}};
    auto r = distance_to_mesh(s, cube, cfg);
    CHECK(r.distance == doctest::Approx(1.0));
    REQUIRE(r.face_index.has_value());

    // A segment that crosses the cube touches the surface.
    LineSegment cross_seg{{-1, 0.5, 0.5}, {2, 0.5, 0.5}};
    r = distance_to_mesh(cross_seg, cube, cfg);
    CHECK(r.distance == doctest::Approx(0.0));
}

TEST_CASE("mesh distance reports the lowest face index on ties") {
    // Two identical stacked faces: both at the same distance.
    TriangleMesh mesh;
    mesh.triangles.push_back(Triangle{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
    mesh.triangles.push_back(Triangle{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
    auto cfg = ExecutorConfig::sequential();
    auto r = distance_to_mesh(Point3{0.2, 0.2, 1.0}, mesh, cfg);
    REQUIRE(r.face_index.has_value());
    CHECK(*r.face_index == 0);
}

TEST_CASE("degenerate faces are skipped in mesh distance") {
    TriangleMesh mesh;
    // A degenerate sliver sits closer than the real face.
    mesh.triangles.push_back(Triangle{{0, 0, 1}, {1, 0, 1}, {2, 0, 1}});
    mesh.triangles.push_back(Triangle{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
    mesh.refresh_degeneracy_flag();
    REQUIRE(mesh.has_degenerate_faces);
    auto cfg = ExecutorConfig::sequential();
    auto r = distance_to_mesh(Point3{0.2, 0.1, 2.0}, mesh, cfg);
    CHECK(r.distance == doctest::Approx(2.0));
    REQUIRE(r.face_index.has_value());
    CHECK(*r.face_index == 1);
}

TEST_CASE("parallel mesh distance is bit identical to sequential") {
    Rng rng(46);
    TriangleMesh mesh;
    for (int i = 0; i < 20000; ++i) {
        mesh.triangles.push_back(random_triangle(rng));
    }
    LineSegment seg{{5, 5, 5}, {6, 7, 8}};
    auto seq = ExecutorConfig::sequential();
    auto res_seq = distance_to_mesh(seg, mesh, seq);
    for (unsigned workers : {2u, 4u}) {
        auto par = ExecutorConfig::parallel(workers, 1024);
        auto res_par = distance_to_mesh(seg, mesh, par);
        CHECK(res_par.distance == res_seq.distance);
        CHECK(res_par.face_index == res_seq.face_index);
    }
}

TEST_CASE("mesh distance rejects unsupported query kinds") {
    auto cube = unit_cube();
    auto cfg = ExecutorConfig::sequential();
    Geometry bad = cube;
    CHECK_THROWS_AS(distance_to_mesh(bad, cube, cfg), std::invalid_argument);
}
