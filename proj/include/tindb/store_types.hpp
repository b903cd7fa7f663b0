#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tindb/geometry.hpp"

namespace tindb::store {

// The only columns mirrored from an upstream table: the geometry and its
// unique identifier.
struct GeometryRecord {
    std::int64_t id = 0;
    Geometry geometry;
};

enum class LoadState { Empty, Loading, Ready };

// Immutable once Ready. Queries hold a shared_ptr snapshot; reloads swap a
// fresh table in without disturbing readers.
struct GeometryTable {
    std::string name;
    std::vector<GeometryRecord> records;
    LoadState load_state = LoadState::Empty;
    std::string geom_column = "geom";

    std::size_t size() const { return records.size(); }
};

using TableSnapshot = std::shared_ptr<const GeometryTable>;

}  // namespace tindb::store
