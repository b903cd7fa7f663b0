#include "tindb/dataset.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <utility>

#include "tindb/rng.hpp"
#include "tindb/wkt.hpp"

namespace tindb::bench {

namespace {

struct IndexedMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<std::uint32_t, 3>> faces;
};

Point3 normalized(const Point3& p) {
    double n = norm(p);
    return {p.x / n, p.y / n, p.z / n};
}

IndexedMesh base_octahedron() {
    IndexedMesh m;
    m.vertices = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    m.faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
               {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    return m;
}

IndexedMesh base_icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    IndexedMesh m;
    m.vertices = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                  {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                  {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    for (Point3& v : m.vertices) v = normalized(v);
    m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    return m;
}

void subdivide(IndexedMesh& m) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoint;
    auto midpoint_index = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
        auto key = std::minmax(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Point3 mid = normalized((m.vertices[a] + m.vertices[b]) * 0.5);
        std::uint32_t index = static_cast<std::uint32_t>(m.vertices.size());
        m.vertices.push_back(mid);
        midpoint.emplace(key, index);
        return index;
    };

    std::vector<std::array<std::uint32_t, 3>> next;
    next.reserve(m.faces.size() * 4);
    for (const auto& f : m.faces) {
        std::uint32_t ab = midpoint_index(f[0], f[1]);
        std::uint32_t bc = midpoint_index(f[1], f[2]);
        std::uint32_t ca = midpoint_index(f[2], f[0]);
        next.push_back({f[0], ab, ca});
        next.push_back({f[1], bc, ab});
        next.push_back({f[2], ca, bc});
        next.push_back({ab, bc, ca});
    }
    m.faces = std::move(next);
}

// Both families are 4^k multiples of distinct odd parts (8·4^a vs 20·4^b),
// so equal counts never occur; the tie below is about equal distance.
struct SphereChoice {
    bool icosahedron = true;
    std::size_t subdivisions = 0;
    std::size_t faces = 20;
};

SphereChoice choose_sphere(std::size_t face_target) {
    auto distance = [face_target](std::size_t candidate) {
        return candidate > face_target ? candidate - face_target : face_target - candidate;
    };
    SphereChoice best;
    best.faces = 20;
    for (int icosa = 1; icosa >= 0; --icosa) {
        std::size_t count = icosa ? 20 : 8;
        for (std::size_t level = 0; level < 12; ++level) {
            std::size_t faces = count << (2 * level);
            bool better = distance(faces) < distance(best.faces) ||
                          (distance(faces) == distance(best.faces) && icosa && !best.icosahedron);
            if (better) best = {icosa != 0, level, faces};
            if (faces > face_target * 4) break;
        }
    }
    return best;
}

TriangleMesh to_triangle_mesh(const IndexedMesh& m) {
    TriangleMesh mesh;
    mesh.triangles.reserve(m.faces.size());
    for (const auto& f : m.faces) {
        mesh.triangles.push_back({m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]});
    }
    mesh.refresh_degeneracy_flag();
    return mesh;
}

}  // namespace

std::size_t sphere_face_count(std::size_t face_target) { return choose_sphere(face_target).faces; }

TriangleMesh unit_sphere(std::size_t face_target) {
    SphereChoice choice = choose_sphere(face_target);
    IndexedMesh m = choice.icosahedron ? base_icosahedron() : base_octahedron();
    for (std::size_t i = 0; i < choice.subdivisions; ++i) subdivide(m);
    return to_triangle_mesh(m);
}

TriangleMesh make_ore_body(const DatasetSpec& spec) {
    SphereChoice choice = choose_sphere(spec.mesh_face_target);
    IndexedMesh m = choice.icosahedron ? base_icosahedron() : base_octahedron();
    for (std::size_t i = 0; i < choice.subdivisions; ++i) subdivide(m);

    const Box& box = spec.bounding_box;
    Point3 extent = box.extent();
    double radius = 0.3 * std::min({extent.x, extent.y, extent.z});
    Point3 center = box.center();

    // Transform the vertex array first so shared vertices stay bitwise
    // identical in the emitted triangle soup.
    for (Point3& v : m.vertices) v = center + v * radius;
    return to_triangle_mesh(m);
}

std::vector<LineSegment> make_drills(const DatasetSpec& spec) {
    Rng rng(spec.seed);
    const Box& box = spec.bounding_box;

    std::vector<LineSegment> drills;
    drills.reserve(spec.segment_count);
    for (std::size_t i = 0; i < spec.segment_count; ++i) {
        if (spec.drill_style == DrillStyle::UniformRandom) {
            Point3 a{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y),
                     rng.uniform(box.lo.z, box.hi.z)};
            Point3 b{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y),
                     rng.uniform(box.lo.z, box.hi.z)};
            drills.push_back({a, b});
            continue;
        }
        // Collar on the top face, hole mostly vertical with a small tilt.
        Point3 collar{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y), box.hi.z};
        double depth = rng.uniform(0.4, 1.0) * (box.hi.z - box.lo.z);
        double tilt_x = rng.uniform(-0.15, 0.15);
        double tilt_y = rng.uniform(-0.15, 0.15);
        Point3 tip{collar.x + tilt_x * depth, collar.y + tilt_y * depth, collar.z - depth};
        drills.push_back({collar, tip});
    }
    return drills;
}

void generate_dataset(const DatasetSpec& spec, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::string drills_path = out_dir + "/drills.csv";
    std::string ore_path = out_dir + "/ore.wkt";

    std::ofstream drills_file(drills_path, std::ios::binary | std::ios::trunc);
    if (!drills_file) throw std::runtime_error("cannot write \"" + drills_path + "\"");
    drills_file << "id,geometry\n";
    std::vector<LineSegment> drills = make_drills(spec);
    for (std::size_t i = 0; i < drills.size(); ++i) {
        drills_file << (i + 1) << ",\"" << serialize_wkt(drills[i]) << "\"\n";
    }
    drills_file.flush();
    if (!drills_file) throw std::runtime_error("write to \"" + drills_path + "\" failed");

    std::ofstream ore_file(ore_path, std::ios::binary | std::ios::trunc);
    if (!ore_file) throw std::runtime_error("cannot write \"" + ore_path + "\"");
    ore_file << serialize_wkt(make_ore_body(spec)) << "\n";
    ore_file.flush();
    if (!ore_file) throw std::runtime_error("write to \"" + ore_path + "\" failed");
}

}  // namespace tindb::bench
