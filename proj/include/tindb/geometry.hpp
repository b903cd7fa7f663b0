#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tindb {

// Coordinates are double precision throughout. Constructors and parsers
// reject non-finite components; arithmetic on already-validated values
// does not re-check.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Point3() = default;
    constexpr Point3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr bool operator==(const Point3& o) const { return x == o.x && y == o.y && z == o.z; }
    constexpr bool operator!=(const Point3& o) const { return !(*this == o); }

    constexpr Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Point3 operator*(double s) const { return {x * s, y * s, z * s}; }

    bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Point3 operator*(double s, const Point3& p) { return p * s; }

constexpr double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Point3 cross(const Point3& a, const Point3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

constexpr double norm2(const Point3& a) { return dot(a, a); }

inline double norm(const Point3& a) { return std::sqrt(norm2(a)); }

struct LineSegment {
    Point3 p0;
    Point3 p1;

    // Degenerate (zero-length) segments are permitted; distance kernels
    // dispatch them to the point primitives.
    Point3 direction() const { return p1 - p0; }
    bool is_degenerate() const { return p0 == p1; }
};

// A triangle with a vertex-order threshold below which the face counts as
// degenerate: the squared norm of (v1-v0)x(v2-v0) is compared against this.
inline constexpr double kDegenerateAreaThreshold = 1e-30;

struct Triangle {
    // Vertex order is preserved exactly as parsed; counter-clockwise order
    // seen from outside encodes the outward normal.
    Point3 v0;
    Point3 v1;
    Point3 v2;

    Point3 edge0() const { return v1 - v0; }
    Point3 edge1() const { return v2 - v0; }

    // Unnormalized normal (v1-v0)x(v2-v0); its length is twice the face area.
    Point3 scaled_normal() const { return cross(edge0(), edge1()); }

    double area() const { return 0.5 * norm(scaled_normal()); }

    bool is_degenerate() const { return norm2(scaled_normal()) <= kDegenerateAreaThreshold; }
};

enum class MeshSource { Tin, PolyhedralSurface };

// Flat, kernel-ready triangle array. Immutable after construction.
struct TriangleMesh {
    std::vector<Triangle> triangles;
    MeshSource source_kind = MeshSource::Tin;
    bool has_degenerate_faces = false;

    std::size_t face_count() const { return triangles.size(); }

    // Scans every face against the degenerate-area threshold.
    void refresh_degeneracy_flag() {
        has_degenerate_faces = false;
        for (const Triangle& t : triangles) {
            if (t.is_degenerate()) {
                has_degenerate_faces = true;
                break;
            }
        }
    }
};

// Polyline with at least 2 vertices. A 2-point line string is
// interchangeable with LineSegment in every kernel dispatch.
struct LineString {
    std::vector<Point3> points;

    bool is_segment() const { return points.size() == 2; }
    LineSegment as_segment() const { return {points.front(), points.back()}; }
};

using Geometry = std::variant<Point3, LineSegment, LineString, TriangleMesh>;

enum class GeometryKind { Point, Segment, LineString, Mesh };

inline GeometryKind kind_of(const Geometry& g) {
    switch (g.index()) {
        case 0: return GeometryKind::Point;
        case 1: return GeometryKind::Segment;
        case 2: return std::get<LineString>(g).is_segment() ? GeometryKind::Segment
                                                            : GeometryKind::LineString;
        default: return GeometryKind::Mesh;
    }
}

// Returns the segment view of g when g is a LineSegment or a 2-point
// LineString; throws otherwise.
inline LineSegment segment_view(const Geometry& g) {
    if (const auto* seg = std::get_if<LineSegment>(&g)) return *seg;
    if (const auto* ls = std::get_if<LineString>(&g); ls && ls->is_segment()) return ls->as_segment();
    throw std::logic_error("geometry is not a line segment");
}

const char* geometry_kind_name(const Geometry& g);

}  // namespace tindb
