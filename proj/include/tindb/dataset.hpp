#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tindb/geometry.hpp"

namespace tindb::bench {

enum class DrillStyle { VerticalJittered, UniformRandom };

struct Box {
    Point3 lo{0.0, 0.0, -400.0};
    Point3 hi{1000.0, 1000.0, 0.0};

    Point3 center() const { return (lo + hi) * 0.5; }
    Point3 extent() const { return hi - lo; }
};

struct DatasetSpec {
    std::uint64_t seed = 42;
    std::size_t segment_count = 1000;
    std::size_t mesh_face_target = 500;
    Box bounding_box;
    DrillStyle drill_style = DrillStyle::VerticalJittered;
};

// Unit-radius sphere mesh centered at the origin. The base solid (regular
// octahedron, 8 faces, or icosahedron, 20 faces) and the subdivision level
// are chosen so the face count (8·4^a or 20·4^b) is nearest face_target;
// ties prefer the icosahedron. Every face is outward CCW and shared
// vertices are bitwise identical, so the mesh is watertight.
TriangleMesh unit_sphere(std::size_t face_target);

// The face count unit_sphere(face_target) will produce.
std::size_t sphere_face_count(std::size_t face_target);

// The ore body: unit sphere scaled to 30% of the smallest box extent and
// placed at the box center.
TriangleMesh make_ore_body(const DatasetSpec& spec);

// Deterministic drill segments for the spec's style and seed.
std::vector<LineSegment> make_drills(const DatasetSpec& spec);

// Writes `drills.csv` (header `id,geometry`, quoted 2-point LINESTRING Z
// rows) and `ore.wkt` (one TIN Z line) into out_dir. Regeneration with the
// same spec is byte-identical. Throws std::runtime_error on I/O failure.
void generate_dataset(const DatasetSpec& spec, const std::string& out_dir);

}  // namespace tindb::bench
