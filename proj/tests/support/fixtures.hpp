#pragma once

#include <cstdint>

#include "tindb/geometry.hpp"
#include "tindb/rng.hpp"

namespace tindb::fixtures {

// Axis-aligned unit cube [0,1]^3 as 12 outward-CCW triangles.
TriangleMesh unit_cube();

// Reverses every face's winding (negates the signed volume).
TriangleMesh flipped(const TriangleMesh& mesh);

TriangleMesh translated(const TriangleMesh& mesh, const Point3& offset);

// Applies a random rotation matrix drawn from the RNG (Gram-Schmidt on
// random vectors; right-handed).
TriangleMesh randomly_rotated(const TriangleMesh& mesh, Rng& rng);

Point3 random_point(Rng& rng, double lo = -1.0, double hi = 1.0);

LineSegment random_segment(Rng& rng, double lo = -1.0, double hi = 1.0);

// Non-degenerate triangle with vertices in [lo, hi]^3 (re-drawn until the
// area clears the degeneracy threshold by a wide margin).
Triangle random_triangle(Rng& rng, double lo = -1.0, double hi = 1.0);

}  // namespace tindb::fixtures
