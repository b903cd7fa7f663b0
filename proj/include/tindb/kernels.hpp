#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "tindb/executor.hpp"
#include "tindb/geometry.hpp"

namespace tindb::kernels {

// Raised by volume evaluation under VolumePolicy::Strict when the mesh is
// not watertight.
class MeshNotClosed : public std::runtime_error {
  public:
    explicit MeshNotClosed(std::string message) : std::runtime_error(std::move(message)) {}
};

// Minimizer parameters: t along the query segment (0 at p0, 1 at p1; 0 for
// point queries), (u, v) in the triangle's edge basis T(u,v) = V0 + u*e0 +
// v*e1. Values are clamped into domain before being reported.
struct SurfaceParams {
    double t = 0.0;
    double u = 0.0;
    double v = 0.0;
};

struct DistanceResult {
    double distance = 0.0;
    Point3 closest_on_a;  // on the query (point or segment)
    Point3 closest_on_b;  // on the target (segment, triangle, or mesh face)
    std::optional<std::size_t> face_index;
    std::optional<SurfaceParams> params;
};

struct IntersectionParams {
    double t = 0.0;
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;  // 1 - u - v
};

struct IntersectionResult {
    bool hit = false;
    std::optional<Point3> point;
    std::optional<std::size_t> face_index;
    std::optional<IntersectionParams> params;
};

// Relative tolerance deciding when the plane-piercing denominator
// (d x e1) . e0 counts as zero, and the slack allowed on the barycentric
// domain checks. Both are scale-aware by construction of the test.
inline constexpr double kIntersectDenominatorEps = 1e-12;
inline constexpr double kBarycentricSlack = 1e-12;

// Signed contribution of one face to the divergence-theorem volume sum:
// (1/6) * v0 . ((v1 - v0) x (v2 - v0)). Pure; degenerate faces contribute
// ~0.
double face_volume_term(const Triangle& tri);

// Signed volume of the mesh: sum of face_volume_term over all faces via the
// fixed pairwise tree. Positive for closed outward-CCW meshes. Under
// VolumePolicy::Strict a non-watertight mesh raises MeshNotClosed; the
// default permissive policy computes the signed sum regardless and reports
// closedness through `closed_out` when provided.
double mesh_volume(const TriangleMesh& mesh, const ExecutorConfig& cfg,
                   bool* closed_out = nullptr);

// Global minimum distance between two segments over (s, t) in [0,1]^2.
// Handles parallel and degenerate (point) segments.
DistanceResult segment_segment_distance(const LineSegment& a, const LineSegment& b);

// Global minimum distance from a point to a triangle, with the closest
// point classified over the interior, three edges, and three vertices.
DistanceResult point_triangle_distance(const Point3& p, const Triangle& tri);

// Global minimum of Q(u,v,t) = |T(u,v) - L(t)|^2 over the product domain
// {u>=0, v>=0, u+v<=1} x {0<=t<=1}. The interior critical point is accepted
// when the quadratic is positive definite and the solution lies in-domain;
// otherwise the minimum over the five boundary subproblems is returned
// (three triangle edges vs the segment, two segment endpoints vs the
// triangle).
DistanceResult segment_triangle_distance(const LineSegment& seg, const Triangle& tri);

// Plane-piercing intersection via the Cramer (cross-product) solution of
// the 3x3 system. No hit when the denominator is negligible under
// kIntersectDenominatorEps, including segments lying in the triangle plane.
IntersectionResult segment_triangle_intersect(const LineSegment& seg, const Triangle& tri);

// Per-face map over the mesh followed by a min-reduction. face_index is the
// argmin face; ties break to the lowest index on both backends. Degenerate
// faces contribute +infinity. The query may be a point, a segment, or a
// 2-point line string.
DistanceResult distance_to_mesh(const Geometry& query, const TriangleMesh& mesh,
                                const ExecutorConfig& cfg);

DistanceResult distance_to_mesh(const Point3& query, const TriangleMesh& mesh,
                                const ExecutorConfig& cfg);
DistanceResult distance_to_mesh(const LineSegment& query, const TriangleMesh& mesh,
                                const ExecutorConfig& cfg);

// Any-reduction over per-face intersection tests. Early termination is
// permitted; the reported face_index is canonicalized to the lowest-index
// hit face so both backends agree. Degenerate faces never intersect.
IntersectionResult intersects_mesh(const LineSegment& query, const TriangleMesh& mesh,
                                   const ExecutorConfig& cfg);

}  // namespace tindb::kernels
