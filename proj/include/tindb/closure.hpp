#pragma once

#include <cstdint>

#include "tindb/geometry.hpp"

namespace tindb {

// Watertightness report for a triangle mesh. A mesh is closed when every
// undirected edge is shared by exactly two faces with opposite directed
// orientation. boundary_edge_count counts undirected edges used once;
// inconsistent_edge_count counts the directed edge uses that participate in
// a conflict (an undirected edge used twice in the same direction, or used
// more than twice).
struct ClosureReport {
    bool is_closed = false;
    std::int64_t boundary_edge_count = 0;
    std::int64_t inconsistent_edge_count = 0;
};

// Edge identity is exact: two edge endpoints match only when their
// coordinates compare equal. Meshes built from shared vertex data (the
// normal case) satisfy this; meshes with per-face jittered copies of the
// same logical vertex will report boundaries.
ClosureReport validate_closed(const TriangleMesh& mesh);

}  // namespace tindb
