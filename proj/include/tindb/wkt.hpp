#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tindb/geometry.hpp"

namespace tindb {

// Raised on malformed WKT. `position` is a 0-based byte offset into the
// input text pointing at the offending token.
class WktParseError : public std::runtime_error {
  public:
    WktParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

// Accepted dialect: POINT Z, LINESTRING Z, TIN Z, POLYHEDRALSURFACE Z.
// Keywords are case-insensitive, whitespace is free-form, coordinates must
// be finite. See docs/wkt-dialect.md for the grammar.
Geometry parse_wkt(std::string_view text);

// Canonical serialization: meshes always render as TIN Z, numbers as
// shortest round-trip decimal. parse_wkt(serialize_wkt(g)) reproduces g
// coordinate-for-coordinate bit-identically.
std::string serialize_wkt(const Geometry& g);

std::string serialize_wkt(const Point3& p);
std::string serialize_wkt(const LineSegment& s);
std::string serialize_wkt(const LineString& ls);
std::string serialize_wkt(const TriangleMesh& mesh);

// Shortest decimal text that round-trips the double exactly.
std::string format_double(double value);

}  // namespace tindb
