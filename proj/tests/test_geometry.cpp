#include <doctest.h>

#include <tindb/geometry.hpp>
#include <tindb/wkt.hpp>

#include <cmath>
#include <string>
#include <variant>

using namespace tindb;

namespace {

const TriangleMesh& as_mesh(const Geometry& g) {
    return std::get<TriangleMesh>(g);
}

}  // namespace

TEST_CASE("point arithmetic and norms") {
    Point3 a{1.0, 2.0, 3.0};
    Point3 b{-4.0, 0.5, 2.0};

    auto s = a + b;
    CHECK(s.x == -3.0);
    CHECK(s.y == 2.5);
    CHECK(s.z == 5.0);

    auto d = a - b;
    CHECK(d.x == 5.0);
    CHECK(d.y == 1.5);
    CHECK(d.z == 1.0);

    CHECK(dot(a, b) == doctest::Approx(-4.0 + 1.0 + 6.0));

    auto c = cross(Point3{1, 0, 0}, Point3{0, 1, 0});
    CHECK(c.x == 0.0);
    CHECK(c.y == 0.0);
    CHECK(c.z == 1.0);

    CHECK(norm2(a) == doctest::Approx(14.0));
    CHECK(norm(Point3{3, 4, 0}) == doctest::Approx(5.0));
}

TEST_CASE("triangle area and degeneracy") {
    Triangle t{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}};
    CHECK(t.area() == doctest::Approx(2.0));
    CHECK_FALSE(t.is_degenerate());

    Triangle collinear{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}};
    CHECK(collinear.is_degenerate());

    Triangle repeated{{1, 2, 3}, {1, 2, 3}, {4, 5, 6}};
    CHECK(repeated.is_degenerate());

    // Tiny but real triangle: area 5e-13 is above the squared threshold.
    Triangle tiny{{0, 0, 0}, {1e-6, 0, 0}, {0, 1e-6, 0}};
    CHECK_FALSE(tiny.is_degenerate());
}

TEST_CASE("segment direction and degeneracy") {
    LineSegment s{{1, 1, 1}, {4, 5, 1}};
    auto dir = s.direction();
    CHECK(dir.x == 3.0);
    CHECK(dir.y == 4.0);
    CHECK(dir.z == 0.0);
    CHECK_FALSE(s.is_degenerate());

    LineSegment zero{{2, 2, 2}, {2, 2, 2}};
    CHECK(zero.is_degenerate());
}

TEST_CASE("wkt point round trip") {
    auto g = parse_wkt("POINT Z (1 2 3)");
    auto* p = std::get_if<Point3>(&g);
    REQUIRE(p != nullptr);
    CHECK(p->x == 1.0);
    CHECK(p->y == 2.0);
    CHECK(p->z == 3.0);
    CHECK(serialize_wkt(g) == "POINT Z (1 2 3)");
}

TEST_CASE("wkt point accepts flexible whitespace and case") {
    auto g = parse_wkt("  point z(1.5   -2e3 0.25)  ");
    auto* p = std::get_if<Point3>(&g);
    REQUIRE(p != nullptr);
    CHECK(p->x == 1.5);
    CHECK(p->y == -2000.0);
    CHECK(p->z == 0.25);
}

TEST_CASE("wkt two point linestring becomes a segment") {
    auto g = parse_wkt("LINESTRING Z (0 0 0, 1 2 3)");
    auto* s = std::get_if<LineSegment>(&g);
    REQUIRE(s != nullptr);
    CHECK(s->p0.x == 0.0);
    CHECK(s->p1.z == 3.0);
    CHECK(serialize_wkt(g) == "LINESTRING Z (0 0 0, 1 2 3)");
}

TEST_CASE("wkt longer linestring keeps all vertices") {
    auto g = parse_wkt("LINESTRING Z (0 0 0, 1 0 0, 1 1 0)");
    auto* ls = std::get_if<LineString>(&g);
    REQUIRE(ls != nullptr);
    CHECK(ls->points.size() == 3);
    CHECK_FALSE(ls->is_segment());
    CHECK(serialize_wkt(g) == "LINESTRING Z (0 0 0, 1 0 0, 1 1 0)");
}

TEST_CASE("wkt tin parses triangular patches") {
    auto g = parse_wkt(
        "TIN Z (((0 0 0, 1 0 0, 0 1 0, 0 0 0)),"
        " ((0 0 1, 1 0 1, 0 1 1, 0 0 1)))");
    const auto& mesh = as_mesh(g);
    CHECK(mesh.face_count() == 2);
    CHECK(mesh.source_kind == MeshSource::Tin);
    CHECK(mesh.triangles[0].v1.x == 1.0);
    CHECK(mesh.triangles[1].v0.z == 1.0);
}

TEST_CASE("wkt tin rejects non-triangular patch") {
    CHECK_THROWS_AS(
        parse_wkt("TIN Z (((0 0 0, 1 0 0, 1 1 0, 0 1 0, 0 0 0)))"),
        WktParseError);
}

TEST_CASE("wkt polyhedralsurface fan triangulates quads") {
    auto g = parse_wkt(
        "POLYHEDRALSURFACE Z (((0 0 0, 1 0 0, 1 1 0, 0 1 0, 0 0 0)))");
    const auto& mesh = as_mesh(g);
    CHECK(mesh.source_kind == MeshSource::PolyhedralSurface);
    REQUIRE(mesh.face_count() == 2);
    // Fan from the first vertex: (v0,v1,v2) and (v0,v2,v3).
    CHECK(mesh.triangles[0].v0.x == 0.0);
    CHECK(mesh.triangles[0].v2.x == 1.0);
    CHECK(mesh.triangles[0].v2.y == 1.0);
    CHECK(mesh.triangles[1].v1.x == 1.0);
    CHECK(mesh.triangles[1].v1.y == 1.0);
    CHECK(mesh.triangles[1].v2.y == 1.0);
    CHECK(mesh.triangles[1].v2.x == 0.0);
}

TEST_CASE("wkt meshes always serialize as tin") {
    auto g = parse_wkt(
        "POLYHEDRALSURFACE Z (((0 0 0, 1 0 0, 1 1 0, 0 1 0, 0 0 0)))");
    auto text = serialize_wkt(g);
    CHECK(text.substr(0, 5) == "TIN Z");
    auto again = parse_wkt(text);
    CHECK(as_mesh(again).face_count() == 2);
}

TEST_CASE("wkt rejects unclosed ring") {
    CHECK_THROWS_WITH_AS(
        parse_wkt("TIN Z (((0 0 0, 1 0 0, 0 1 0, 5 5 5)))"),
        doctest::Contains("ring"), WktParseError);
}

TEST_CASE("wkt rejects short ring") {
    CHECK_THROWS_AS(parse_wkt("TIN Z (((0 0 0, 1 0 0, 0 0 0)))"),
                    WktParseError);
}

TEST_CASE("wkt rejects missing z marker") {
    CHECK_THROWS_AS(parse_wkt("POINT (1 2 3)"), WktParseError);
    CHECK_THROWS_AS(parse_wkt("POINT ZM (1 2 3 4)"), WktParseError);
}

TEST_CASE("wkt rejects two dimensional coordinates") {
    CHECK_THROWS_AS(parse_wkt("POINT Z (1 2)"), WktParseError);
    CHECK_THROWS_AS(parse_wkt("LINESTRING Z (0 0, 1 1)"), WktParseError);
}

TEST_CASE("wkt rejects non finite coordinates") {
    CHECK_THROWS_WITH_AS(parse_wkt("POINT Z (1 2 nan)"),
                         doctest::Contains("non-finite"), WktParseError);
    CHECK_THROWS_WITH_AS(parse_wkt("POINT Z (inf 2 3)"),
                         doctest::Contains("non-finite"), WktParseError);
    CHECK_THROWS_WITH_AS(parse_wkt("POINT Z (1 2 1e999)"),
                         doctest::Contains("non-finite"), WktParseError);
}

TEST_CASE("wkt rejects trailing garbage") {
    CHECK_THROWS_AS(parse_wkt("POINT Z (1 2 3) x"), WktParseError);
}

TEST_CASE("wkt errors carry a byte position") {
    try {
        parse_wkt("POINT Z (1 2 )");
        FAIL("expected a parse error");
    } catch (const WktParseError& e) {
        CHECK(e.position() == 13);
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
}

TEST_CASE("wkt rejects unknown tag") {
    CHECK_THROWS_AS(parse_wkt("CIRCLE Z (0 0 0)"), WktParseError);
    CHECK_THROWS_AS(parse_wkt(""), WktParseError);
}

TEST_CASE("wkt single point linestring is invalid") {
    CHECK_THROWS_AS(parse_wkt("LINESTRING Z (1 2 3)"), WktParseError);
}

TEST_CASE("format_double round trips exactly") {
    const double values[] = {0.0,   -0.0,        1.0,    0.1,
                             1e300, -2.5e-17,    1e-300, 123456789.123456789,
                             3.0,   0.30000000000000004};
    for (double v : values) {
        auto text = format_double(v);
        double back = std::stod(text);
        CHECK(back == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.5) == "-0.5");
}

TEST_CASE("wkt coordinate round trip preserves bits") {
    Point3 p{0.1 + 0.2, -1.0 / 3.0, 1e-17};
    auto text = serialize_wkt(Geometry{p});
    auto g = parse_wkt(text);
    auto* q = std::get_if<Point3>(&g);
    REQUIRE(q != nullptr);
    CHECK(q->x == p.x);
    CHECK(q->y == p.y);
    CHECK(q->z == p.z);
}

TEST_CASE("geometry kind classification") {
    CHECK(kind_of(parse_wkt("POINT Z (0 0 0)")) == GeometryKind::Point);
    CHECK(kind_of(parse_wkt("LINESTRING Z (0 0 0, 1 1 1)")) ==
          GeometryKind::Segment);
    CHECK(kind_of(parse_wkt("LINESTRING Z (0 0 0, 1 1 1, 2 0 0)")) ==
          GeometryKind::LineString);
    CHECK(kind_of(parse_wkt("TIN Z (((0 0 0, 1 0 0, 0 1 0, 0 0 0)))")) ==
          GeometryKind::Mesh);
}

TEST_CASE("mesh degeneracy flag tracks faces") {
    auto g = parse_wkt("TIN Z (((0 0 0, 1 0 0, 0 1 0, 0 0 0)))");
    auto mesh = as_mesh(g);
    CHECK_FALSE(mesh.has_degenerate_faces);
    mesh.triangles.push_back(Triangle{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
    mesh.refresh_degeneracy_flag();
    CHECK(mesh.has_degenerate_faces);
}
