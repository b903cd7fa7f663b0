#include "support/fixtures.hpp"

#include <array>
#include <cmath>

namespace tindb::fixtures {

TriangleMesh unit_cube() {
    const std::array<Point3, 8> v = {{
        {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
        {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
    }};
    const int faces[12][3] = {
        {0, 3, 2}, {0, 2, 1},  // bottom (z=0)
        {4, 5, 6}, {4, 6, 7},  // top (z=1)
        {0, 1, 5}, {0, 5, 4},  // front (y=0)
        {2, 3, 7}, {2, 7, 6},  // back (y=1)
        {0, 4, 7}, {0, 7, 3},  // left (x=0)
        {1, 2, 6}, {1, 6, 5},  // right (x=1)
    };
    TriangleMesh mesh;
    mesh.triangles.reserve(12);
    for (const auto& f : faces) mesh.triangles.push_back({v[f[0]], v[f[1]], v[f[2]]});
    return mesh;
}

TriangleMesh flipped(const TriangleMesh& mesh) {
    TriangleMesh out = mesh;
    for (Triangle& t : out.triangles) std::swap(t.v1, t.v2);
    return out;
}

TriangleMesh translated(const TriangleMesh& mesh, const Point3& offset) {
    TriangleMesh out = mesh;
    for (Triangle& t : out.triangles) {
        t.v0 = t.v0 + offset;
        t.v1 = t.v1 + offset;
        t.v2 = t.v2 + offset;
    }
    return out;
}

namespace {

Point3 normalized(const Point3& p) {
    const double n = norm(p);
    return {p.x / n, p.y / n, p.z / n};
}

}  // namespace

TriangleMesh randomly_rotated(const TriangleMesh& mesh, Rng& rng) {
    // Gram-Schmidt on random vectors; redraw on near-parallel picks.
    Point3 a, b;
    do {
        a = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    } while (norm2(a) < 1e-3);
    a = normalized(a);
    Point3 c;
    do {
        b = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        c = cross(a, b);
    } while (norm2(c) < 1e-3);
    c = normalized(c);
    b = cross(c, a);  // already unit: c ⟂ a, both unit

    auto rotate = [&](const Point3& p) {
        return Point3{p.x * a.x + p.y * b.x + p.z * c.x,
                      p.x * a.y + p.y * b.y + p.z * c.y,
                      p.x * a.z + p.y * b.z + p.z * c.z};
    };
    TriangleMesh out = mesh;
    for (Triangle& t : out.triangles) {
        t.v0 = rotate(t.v0);
        t.v1 = rotate(t.v1);
        t.v2 = rotate(t.v2);
    }
    return out;
}

Point3 random_point(Rng& rng, double lo, double hi) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

LineSegment random_segment(Rng& rng, double lo, double hi) {
    return {random_point(rng, lo, hi), random_point(rng, lo, hi)};
}

Triangle random_triangle(Rng& rng, double lo, double hi) {
    for (;;) {
        Triangle t{random_point(rng, lo, hi), random_point(rng, lo, hi),
                   random_point(rng, lo, hi)};
        if (norm2(t.scaled_normal()) > 1e-6) return t;
    }
}

}  // namespace tindb::fixtures
