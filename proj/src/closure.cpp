#include "tindb/closure.hpp"

#include <bit>
#include <cstring>
#include <unordered_map>

namespace tindb {

namespace {

// -0.0 and 0.0 compare equal but differ bitwise; canonicalize before hashing.
std::uint64_t coord_bits(double v) {
    if (v == 0.0) v = 0.0;
    return std::bit_cast<std::uint64_t>(v);
}

struct VertexKey {
    std::uint64_t x, y, z;
    bool operator==(const VertexKey&) const = default;
};

VertexKey key_of(const Point3& p) { return {coord_bits(p.x), coord_bits(p.y), coord_bits(p.z)}; }

struct VertexKeyHash {
    std::size_t operator()(const VertexKey& k) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t v : {k.x, k.y, k.z}) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct EdgeUse {
    int forward = 0;   // lower vertex id -> higher vertex id
    int backward = 0;  // higher vertex id -> lower vertex id
};

}  // namespace

ClosureReport validate_closed(const TriangleMesh& mesh) {
    std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> vertex_ids;
    vertex_ids.reserve(mesh.face_count() * 2);

    auto vertex_id = [&](const Point3& p) -> std::uint32_t {
        auto [it, inserted] = vertex_ids.emplace(key_of(p), static_cast<std::uint32_t>(vertex_ids.size()));
        return it->second;
    };

    std::unordered_map<std::uint64_t, EdgeUse> edges;
    edges.reserve(mesh.face_count() * 3);

    auto record_edge = [&](std::uint32_t a, std::uint32_t b) {
        const bool flipped = a > b;
        if (flipped) std::swap(a, b);
        std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
        EdgeUse& use = edges[key];
        if (flipped)
            ++use.backward;
        else
            ++use.forward;
    };

    for (const Triangle& t : mesh.triangles) {
        std::uint32_t a = vertex_id(t.v0);
        std::uint32_t b = vertex_id(t.v1);
        std::uint32_t c = vertex_id(t.v2);
        record_edge(a, b);
        record_edge(b, c);
        record_edge(c, a);
    }

    ClosureReport report;
    for (const auto& [key, use] : edges) {
        const int total = use.forward + use.backward;
        if (total == 1) {
            ++report.boundary_edge_count;
        } else if (total != 2 || use.forward != 1) {
            // Same-direction pair or over-shared edge: every use conflicts.
            report.inconsistent_edge_count += total;
        }
    }
    report.is_closed =
        report.boundary_edge_count == 0 && report.inconsistent_edge_count == 0 && !mesh.triangles.empty();
    return report;
}

}  // namespace tindb
