#include "tindb/wkt.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <system_error>

namespace tindb {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

class Cursor {
  public:
    explicit Cursor(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw WktParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // Keyword: a run of letters/underscores.
    std::string_view word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    void expect_word(std::string_view kw) {
        skip_ws();
        std::size_t start = pos_;
        std::string_view w = word();
        if (!iequals(w, kw))
            throw WktParseError("expected keyword '" + std::string(kw) + "'", start);
    }

    double number() {
        skip_ws();
        std::size_t start = pos_;
        // Reject alphabetic starts explicitly so "NaN"/"Inf" report as
        // non-finite coordinate tokens rather than generic syntax noise.
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            std::string_view w = word();
            if (iequals(w, "nan") || iequals(w, "inf") || iequals(w, "infinity"))
                throw WktParseError("non-finite coordinate", start);
            throw WktParseError("expected number", start);
        }
        double value = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec == std::errc::result_out_of_range)
            throw WktParseError("non-finite coordinate", start);
        if (ec != std::errc() || ptr == begin) throw WktParseError("expected number", start);
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        if (!std::isfinite(value)) throw WktParseError("non-finite coordinate", start);
        return value;
    }

    Point3 point() {
        std::size_t start = pos_;
        Point3 p;
        p.x = number();
        require_separator(start);
        p.y = number();
        // A 2D coordinate pair ends at ',' or ')'; demand the Z component.
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == ',' || text_[pos_] == ')')
            throw WktParseError("expected Z coordinate (2D input not accepted)", pos_);
        p.z = number();
        return p;
    }

  private:
    void require_separator(std::size_t start) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == ',' || text_[pos_] == ')')
            throw WktParseError("incomplete coordinate triple", start);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::vector<Point3> parse_point_list(Cursor& cur) {
    std::vector<Point3> pts;
    cur.expect('(');
    do {
        pts.push_back(cur.point());
    } while (cur.consume(','));
    cur.expect(')');
    return pts;
}

// One polygon patch: (( p0, p1, ..., p0 )). Only the exterior ring is
// accepted; interior rings are outside the dialect.
std::vector<Point3> parse_patch_ring(Cursor& cur) {
    cur.expect('(');
    std::size_t ring_start = cur.pos();
    std::vector<Point3> ring = parse_point_list(cur);
    if (cur.peek() == ',')
        throw WktParseError("interior rings are not supported", cur.pos());
    cur.expect(')');
    if (ring.size() < 4)
        throw WktParseError("polygon ring must have at least 4 points including closure",
                            ring_start);
    if (ring.front() != ring.back())
        throw WktParseError("polygon ring is not closed (first point != last point)", ring_start);
    ring.pop_back();  // drop the closure vertex
    return ring;
}

// Fan-triangulates a planar convex ring (closure vertex already removed).
void append_fan(std::vector<Triangle>& out, const std::vector<Point3>& ring) {
    for (std::size_t i = 1; i + 1 < ring.size(); ++i)
        out.push_back(Triangle{ring[0], ring[i], ring[i + 1]});
}

TriangleMesh parse_surface(Cursor& cur, MeshSource kind) {
    TriangleMesh mesh;
    mesh.source_kind = kind;
    cur.expect('(');
    do {
        std::size_t patch_start = cur.pos();
        std::vector<Point3> ring = parse_patch_ring(cur);
        if (kind == MeshSource::Tin && ring.size() != 3)
            throw WktParseError("TIN patch must be a triangle (4 points including closure)",
                                patch_start);
        append_fan(mesh.triangles, ring);
    } while (cur.consume(','));
    cur.expect(')');
    mesh.refresh_degeneracy_flag();
    return mesh;
}

void expect_z_marker(Cursor& cur) {
    std::size_t start = cur.pos();
    cur.skip_ws();
    std::string_view w = cur.word();
    if (w.empty())
        throw WktParseError("expected 'Z' dimension marker (2D input not accepted)", start);
    if (iequals(w, "ZM") || iequals(w, "M"))
        throw WktParseError("measured coordinates are not supported", start);
    if (!iequals(w, "Z"))
        throw WktParseError("expected 'Z' dimension marker", start);
}

}  // namespace

Geometry parse_wkt(std::string_view text) {
    Cursor cur(text);
    std::size_t kw_start = cur.pos();
    cur.skip_ws();
    kw_start = cur.pos();
    std::string_view kw = cur.word();
    if (kw.empty()) throw WktParseError("empty WKT input", kw_start);

    Geometry result;
    if (iequals(kw, "POINT")) {
        expect_z_marker(cur);
        cur.expect('(');
        Point3 p = cur.point();
        cur.expect(')');
        result = p;
    } else if (iequals(kw, "LINESTRING")) {
        expect_z_marker(cur);
        std::size_t list_start = cur.pos();
        std::vector<Point3> pts = parse_point_list(cur);
        if (pts.size() < 2)
            throw WktParseError("LINESTRING requires at least 2 points", list_start);
        if (pts.size() == 2) {
            result = LineSegment{pts[0], pts[1]};
        } else {
            result = LineString{std::move(pts)};
        }
    } else if (iequals(kw, "TIN")) {
        expect_z_marker(cur);
        result = parse_surface(cur, MeshSource::Tin);
    } else if (iequals(kw, "POLYHEDRALSURFACE")) {
        expect_z_marker(cur);
        result = parse_surface(cur, MeshSource::PolyhedralSurface);
    } else {
        throw WktParseError("unknown geometry type '" + std::string(kw) + "'", kw_start);
    }

    if (!cur.at_end()) throw WktParseError("trailing input after geometry", cur.pos());
    return result;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

void append_point(std::string& out, const Point3& p) {
    out += format_double(p.x);
    out += ' ';
    out += format_double(p.y);
    out += ' ';
    out += format_double(p.z);
}

}  // namespace

std::string serialize_wkt(const Point3& p) {
    std::string out = "POINT Z (";
    append_point(out, p);
    out += ')';
    return out;
}

std::string serialize_wkt(const LineSegment& s) {
    std::string out = "LINESTRING Z (";
    append_point(out, s.p0);
    out += ", ";
    append_point(out, s.p1);
    out += ')';
    return out;
}

std::string serialize_wkt(const LineString& ls) {
    std::string out = "LINESTRING Z (";
    for (std::size_t i = 0; i < ls.points.size(); ++i) {
        if (i) out += ", ";
        append_point(out, ls.points[i]);
    }
    out += ')';
    return out;
}

std::string serialize_wkt(const TriangleMesh& mesh) {
    std::string out = "TIN Z (";
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        if (i) out += ", ";
        const Triangle& t = mesh.triangles[i];
        out += "((";
        append_point(out, t.v0);
        out += ", ";
        append_point(out, t.v1);
        out += ", ";
        append_point(out, t.v2);
        out += ", ";
        append_point(out, t.v0);  // closure vertex
        out += "))";
    }
    out += ')';
    return out;
}

std::string serialize_wkt(const Geometry& g) {
    return std::visit([](const auto& v) { return serialize_wkt(v); }, g);
}

const char* geometry_kind_name(const Geometry& g) {
    switch (kind_of(g)) {
        case GeometryKind::Point: return "POINT";
        case GeometryKind::Segment: return "LINESTRING(2)";
        case GeometryKind::LineString: return "LINESTRING";
        case GeometryKind::Mesh: return "TIN";
    }
    return "?";
}

}  // namespace tindb
