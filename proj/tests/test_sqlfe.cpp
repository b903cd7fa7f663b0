#include <doctest.h>

#include <tindb/engine.hpp>
#include <tindb/sqlfe.hpp>
#include <tindb/store.hpp>
#include <tindb/wkt.hpp>

#include "support/fixtures.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace tindb;
using namespace tindb::sqlfe;
using tindb::fixtures::translated;
using tindb::fixtures::unit_cube;

namespace {

SqlErrorKind parse_error_kind(const std::string& sql) {
    try {
        parse_sql(sql);
    } catch (const SqlError& e) {
        return e.kind;
    }
    FAIL("expected SqlError for: ", sql);
    return SqlErrorKind::Syntax;
}

// Five unit cubes marching along +x: ids 1..5, cube i occupies x in [3(i-1), 3(i-1)+1].
void register_cubes(store::Catalog& catalog, const std::string& geom_column = "geom") {
    store::GeometryTable table;
    table.name = "drills";
    table.geom_column = geom_column;
    auto cube = unit_cube();
    for (int i = 0; i < 5; ++i) {
        table.records.push_back(
            {i + 1, Geometry{translated(cube, Point3{3.0 * i, 0.0, 0.0})}});
    }
    table.load_state = store::LoadState::Ready;
    catalog.register_table(std::move(table));
}

kernels::ExecutorConfig seq() { return kernels::ExecutorConfig::sequential(); }

}  // namespace

TEST_CASE("sqlstates cover the error taxonomy") {
    CHECK(std::string(sqlstate_for(SqlErrorKind::Syntax)) == "42601");
    CHECK(std::string(sqlstate_for(SqlErrorKind::UnknownFunction)) == "42883");
    CHECK(std::string(sqlstate_for(SqlErrorKind::UnknownColumn)) == "42703");
    CHECK(std::string(sqlstate_for(SqlErrorKind::UnknownTable)) == "42P01");
    CHECK(std::string(sqlstate_for(SqlErrorKind::TypeError)) == "42804");
    CHECK(std::string(sqlstate_for(SqlErrorKind::InvalidGeometry)) == "22023");
    CHECK(std::string(sqlstate_for(SqlErrorKind::Unsupported)) == "0A000");
}

TEST_CASE("select one and version() parse without a table") {
    auto one = parse_sql("SELECT 1");
    CHECK(one.kind == StatementKind::Select);
    CHECK_FALSE(one.source_table.has_value());
    REQUIRE(one.projections.size() == 1);
    CHECK(one.projections[0].kind == Projection::Kind::Number);
    CHECK(one.projections[0].label == "?column?");

    auto ver = parse_sql("select VERSION()");
    REQUIRE(ver.projections.size() == 1);
    CHECK(ver.projections[0].kind == Projection::Kind::Version);
    CHECK(ver.projections[0].label == "version");
}

TEST_CASE("select list, table, where and limit parse") {
    auto stmt = parse_sql(
        "SELECT id, geom, ST_Volume(geom) AS v FROM Drills WHERE id < 4 AND v > 0.5 LIMIT 2;");
    REQUIRE(stmt.source_table.has_value());
    CHECK(*stmt.source_table == "drills");
    REQUIRE(stmt.projections.size() == 3);
    CHECK(stmt.projections[0].kind == Projection::Kind::Id);
    CHECK(stmt.projections[1].kind == Projection::Kind::GeomColumn);
    CHECK(stmt.projections[1].column_name == "geom");
    CHECK(stmt.projections[2].kind == Projection::Kind::Call);
    CHECK(stmt.projections[2].label == "v");
    REQUIRE(stmt.limit.has_value());
    CHECK(*stmt.limit == 2);
    REQUIRE(stmt.where != nullptr);
    CHECK(stmt.where->kind == Expr::Kind::And);
    REQUIRE(stmt.calls.size() == 1);
    CHECK(stmt.calls[0].function == SpatialFunction::Volume);
}

TEST_CASE("star expands to id and the geometry column") {
    auto stmt = parse_sql("SELECT * FROM t");
    REQUIRE(stmt.projections.size() == 2);
    CHECK(stmt.projections[0].kind == Projection::Kind::Id);
    CHECK(stmt.projections[1].kind == Projection::Kind::GeomColumn);
    CHECK(stmt.projections[1].column_name.empty());
}

TEST_CASE("identical spatial calls are deduplicated") {
    auto stmt = parse_sql(
        "SELECT ST_3DDistance(geom, ST_GeomFromText('POINT Z (0 0 0)')) FROM t "
        "WHERE ST_3DDistance(geom, ST_GeomFromText('POINT Z(0 0 0)')) < 5");
    CHECK(stmt.calls.size() == 1);

    auto two = parse_sql(
        "SELECT ST_3DDistance(geom, ST_GeomFromText('POINT Z (0 0 0)')) FROM t "
        "WHERE ST_3DDistance(geom, ST_GeomFromText('POINT Z (1 0 0)')) < 5");
    CHECK(two.calls.size() == 2);
}

TEST_CASE("argument order does not matter for spatial calls") {
    auto a = parse_sql("SELECT ST_3DDistance(geom, ST_GeomFromText('POINT Z (0 0 0)')) FROM t");
    auto b = parse_sql("SELECT ST_3DDistance(ST_GeomFromText('POINT Z (0 0 0)'), geom) FROM t");
    REQUIRE(a.calls.size() == 1);
    REQUIRE(b.calls.size() == 1);
    CHECK(a.calls[0].dedup_key == b.calls[0].dedup_key);
}

TEST_CASE("parse errors map onto the taxonomy") {
    CHECK(parse_error_kind("SELEC 1") == SqlErrorKind::Syntax);
    CHECK(parse_error_kind("SELECT") == SqlErrorKind::Syntax);
    CHECK(parse_error_kind("SELECT id FROM") == SqlErrorKind::Syntax);
    CHECK(parse_error_kind("SELECT id FROM t LIMIT -1") == SqlErrorKind::Syntax);
    CHECK(parse_error_kind("SELECT id FROM t LIMIT many") == SqlErrorKind::Syntax);
    CHECK(parse_error_kind("INSERT INTO t VALUES (1)") == SqlErrorKind::Unsupported);
    CHECK(parse_error_kind("SELECT id FROM a JOIN b ON true") == SqlErrorKind::Unsupported);
    CHECK(parse_error_kind("SELECT id FROM a, b") == SqlErrorKind::Unsupported);
    CHECK(parse_error_kind("SELECT id FROM t GROUP BY id") == SqlErrorKind::Unsupported);
    CHECK(parse_error_kind("SELECT id FROM t ORDER BY id") == SqlErrorKind::Unsupported);
    CHECK(parse_error_kind("SELECT ST_Area(geom) FROM t") == SqlErrorKind::UnknownFunction);
    CHECK(parse_error_kind("SELECT ST_Volume(geom, geom) FROM t") == SqlErrorKind::Unsupported);
    CHECK(parse_error_kind("SELECT ST_3DDistance(geom, geom) FROM t") == SqlErrorKind::Unsupported);
    CHECK(parse_error_kind("SELECT ST_3DDistance(ST_GeomFromText('POINT Z (0 0 0)'), "
                           "ST_GeomFromText('POINT Z (1 1 1)')) FROM t") ==
          SqlErrorKind::Unsupported);
    CHECK(parse_error_kind("SELECT ST_Volume(ST_Volume(geom)) FROM t") == SqlErrorKind::Unsupported);
    CHECK(parse_error_kind("SELECT ST_GeomFromText('POINT Z (0 0 0)') FROM t") ==
          SqlErrorKind::Unsupported);
}

TEST_CASE("bad geometry literals carry the invalid-geometry kind and a position") {
    try {
        parse_sql("SELECT ST_Volume(ST_GeomFromText('POINT Z (1 2)')) FROM t");
        FAIL("expected SqlError");
    } catch (const SqlError& e) {
        CHECK(e.kind == SqlErrorKind::InvalidGeometry);
        CHECK(e.position > 0);
    }
}

TEST_CASE("type errors in predicates are caught at parse time") {
    CHECK(parse_error_kind("SELECT id FROM t WHERE id") == SqlErrorKind::TypeError);
    CHECK(parse_error_kind("SELECT id FROM t WHERE ST_Volume(geom)") == SqlErrorKind::TypeError);
    CHECK(parse_error_kind(
              "SELECT id FROM t WHERE ST_3DIntersects(geom, ST_GeomFromText('POINT Z (0 0 0)')) < 1") ==
          SqlErrorKind::TypeError);
    CHECK(parse_error_kind("SELECT id FROM t WHERE id AND true") == SqlErrorKind::TypeError);
    CHECK(parse_error_kind("SELECT id FROM t WHERE NOT id") == SqlErrorKind::TypeError);
    CHECK(parse_error_kind("SELECT id FROM t WHERE ST_GeomFromText('POINT Z (0 0 0)') = 1") ==
          SqlErrorKind::TypeError);
    CHECK(parse_error_kind("SELECT id FROM t WHERE unknown_col > 1") == SqlErrorKind::UnknownColumn);
}

TEST_CASE("transaction statements parse as no-ops") {
    CHECK(parse_sql("BEGIN").kind == StatementKind::Begin);
    CHECK(parse_sql("begin transaction").kind == StatementKind::Begin);
    CHECK(parse_sql("COMMIT").kind == StatementKind::Commit);
    CHECK(parse_sql("END").kind == StatementKind::Commit);
    CHECK(parse_sql("ROLLBACK;").kind == StatementKind::Rollback);
    CHECK(parse_sql("   ").kind == StatementKind::Empty);
}

TEST_CASE("split_statements is quote-aware") {
    auto parts = split_statements("SELECT 1; SELECT 2;");
    REQUIRE(parts.size() == 2);

    auto quoted = split_statements("SELECT ST_Volume(ST_GeomFromText('a;b')) FROM t");
    REQUIRE(quoted.size() == 1);

    CHECK(split_statements("").empty());
    CHECK(split_statements(" ; ;; ").empty());
}

TEST_CASE("engine answers select one and version") {
    store::Catalog catalog;
    auto one = execute_sql("SELECT 1", catalog, seq());
    CHECK(one.is_row_returning);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0][0] == "1");
    CHECK(one.command_tag == "SELECT 1");
    REQUIRE(one.columns.size() == 1);
    CHECK(one.columns[0].type_oid == kOidInt8);

    auto ver = execute_sql("SELECT version()", catalog, seq());
    CHECK(ver.rows[0][0] == engine_version());
    CHECK(ver.columns[0].type_oid == kOidText);
}

TEST_CASE("engine projects id, geometry and volume over a table") {
    store::Catalog catalog;
    register_cubes(catalog);
    auto result = execute_sql("SELECT id, geom, ST_Volume(geom) FROM drills", catalog, seq());
    REQUIRE(result.rows.size() == 5);
    CHECK(result.command_tag == "SELECT 5");
    CHECK(result.rows[0][0] == "1");
    CHECK(result.rows[4][0] == "5");
    CHECK(result.rows[0][1].rfind("TIN Z", 0) == 0);
    // Translated cubes accumulate rounding in the face terms, so the cell
    // is the shortest round-trip of a value within 1e-12 of 1.
    for (const auto& row : result.rows) CHECK(std::abs(std::stod(row[2]) - 1.0) < 1e-12);
    REQUIRE(result.columns.size() == 3);
    CHECK(result.columns[0].name == "id");
    CHECK(result.columns[0].type_oid == kOidInt8);
    CHECK(result.columns[1].name == "geom");
    CHECK(result.columns[1].type_oid == kOidText);
    CHECK(result.columns[2].name == "st_volume");
    CHECK(result.columns[2].type_oid == kOidFloat8);
}

TEST_CASE("distance and intersects queries filter rows") {
    store::Catalog catalog;
    register_cubes(catalog);

    // Probe point sits 2 units left of cube 1; cubes are 3 apart.
    auto near = execute_sql(
        "SELECT id FROM drills WHERE ST_3DDistance(geom, ST_GeomFromText('POINT Z (-2 0.5 0.5)')) < 4",
        catalog, seq());
    REQUIRE(near.rows.size() == 1);
    CHECK(near.rows[0][0] == "1");

    // A long segment through y=z=0.5 crosses every cube.
    auto hits = execute_sql(
        "SELECT id, ST_3DIntersects(geom, ST_GeomFromText('LINESTRING Z (-1 0.5 0.5, 20 0.5 0.5)')) "
        "FROM drills",
        catalog, seq());
    REQUIRE(hits.rows.size() == 5);
    for (const auto& row : hits.rows) CHECK(row[1] == "t");
    CHECK(hits.columns[1].type_oid == kOidBool);
}

TEST_CASE("boolean calls compare against boolean literals only") {
    store::Catalog catalog;
    register_cubes(catalog);
    auto result = execute_sql(
        "SELECT id FROM drills WHERE ST_3DIntersects(geom, "
        "ST_GeomFromText('LINESTRING Z (0.5 0.5 -1, 0.5 0.5 2)')) = true",
        catalog, seq());
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0][0] == "1");
}

TEST_CASE("limit truncates rows but spatial batches still cover the whole table") {
    store::Catalog catalog;
    register_cubes(catalog);
    auto result = execute_sql(
        "SELECT id, ST_3DDistance(geom, ST_GeomFromText('POINT Z (0 0 0)')) FROM drills LIMIT 1",
        catalog, seq());
    REQUIRE(result.rows.size() == 1);
    CHECK(result.stats.batches_run == 1);
    CHECK(result.stats.kernel_records_evaluated == 5);
}

TEST_CASE("duplicate calls run one batch, distinct literals run two") {
    store::Catalog catalog;
    register_cubes(catalog);
    auto same = execute_sql(
        "SELECT ST_3DDistance(geom, ST_GeomFromText('POINT Z (0 0 0)')) FROM drills "
        "WHERE ST_3DDistance(geom, ST_GeomFromText('POINT Z (0 0 0)')) >= 0",
        catalog, seq());
    CHECK(same.stats.batches_run == 1);
    CHECK(same.stats.kernel_records_evaluated == 5);

    auto different = execute_sql(
        "SELECT ST_3DDistance(geom, ST_GeomFromText('POINT Z (0 0 0)')) FROM drills "
        "WHERE ST_3DDistance(geom, ST_GeomFromText('POINT Z (9 9 9)')) >= 0",
        catalog, seq());
    CHECK(different.stats.batches_run == 2);
    CHECK(different.stats.kernel_records_evaluated == 10);
}

TEST_CASE("type mismatches exclude rows with a notice") {
    store::Catalog catalog;
    store::GeometryTable table;
    table.name = "mixed";
    table.records.push_back({1, Geometry{unit_cube()}});
    table.records.push_back({2, Geometry{Point3{0, 0, 0}}});  // no volume
    table.load_state = store::LoadState::Ready;
    catalog.register_table(std::move(table));

    auto result = execute_sql("SELECT id, ST_Volume(geom) FROM mixed", catalog, seq());
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0][0] == "1");
    CHECK(result.stats.rows_excluded_by_errors == 1);
    REQUIRE(result.notices.size() == 1);
    CHECK(result.notices[0].find("type mismatch") != std::string::npos);
}

TEST_CASE("unknown tables and columns surface as sql errors") {
    store::Catalog catalog;
    register_cubes(catalog, "shape");

    try {
        execute_sql("SELECT id FROM nowhere", catalog, seq());
        FAIL("expected SqlError");
    } catch (const SqlError& e) {
        CHECK(e.kind == SqlErrorKind::UnknownTable);
    }

    try {
        execute_sql("SELECT geom FROM drills", catalog, seq());
        FAIL("expected SqlError");
    } catch (const SqlError& e) {
        CHECK(e.kind == SqlErrorKind::UnknownColumn);
    }

    // The configured geometry column works, and star picks it up.
    auto named = execute_sql("SELECT shape FROM drills LIMIT 1", catalog, seq());
    CHECK(named.columns[0].name == "shape");
    auto star = execute_sql("SELECT * FROM drills LIMIT 1", catalog, seq());
    REQUIRE(star.columns.size() == 2);
    CHECK(star.columns[1].name == "shape");
}

TEST_CASE("transaction no-ops execute with a notice") {
    store::Catalog catalog;
    auto begin = execute_sql("BEGIN", catalog, seq());
    CHECK_FALSE(begin.is_row_returning);
    CHECK(begin.command_tag == "BEGIN");
    REQUIRE(begin.notices.size() == 1);
    CHECK(begin.notices[0].find("no-op") != std::string::npos);
    CHECK(execute_sql("COMMIT", catalog, seq()).command_tag == "COMMIT");
    CHECK(execute_sql("ROLLBACK", catalog, seq()).command_tag == "ROLLBACK");
}

TEST_CASE("describe matches execution column sets") {
    store::Catalog catalog;
    register_cubes(catalog);
    auto stmt = parse_sql(
        "SELECT id, geom, ST_Volume(geom), ST_3DIntersects(geom, "
        "ST_GeomFromText('POINT Z (0 0 0)')) FROM drills");
    auto described = describe_statement(stmt, catalog);
    auto executed = plan_and_execute(stmt, catalog, seq());
    REQUIRE(described.size() == executed.columns.size());
    for (std::size_t i = 0; i < described.size(); ++i) {
        CHECK(described[i].name == executed.columns[i].name);
        CHECK(described[i].type_oid == executed.columns[i].type_oid);
    }
    CHECK(describe_statement(parse_sql("BEGIN"), catalog).empty());
}

TEST_CASE("sequential and parallel backends return identical rows") {
    store::Catalog catalog;
    register_cubes(catalog);
    const std::string sql =
        "SELECT id, ST_3DDistance(geom, ST_GeomFromText('POINT Z (-2 0.5 0.5)')) FROM drills "
        "WHERE ST_3DDistance(geom, ST_GeomFromText('POINT Z (-2 0.5 0.5)')) < 7";
    auto seq_result = execute_sql(sql, catalog, seq());
    auto par_result = execute_sql(sql, catalog, kernels::ExecutorConfig::parallel(4, 2));
    // Same chunk shape is not required for row equality: rendered values
    // come from per-record kernels, not cross-record reductions.
    REQUIRE(seq_result.rows.size() == par_result.rows.size());
    CHECK(seq_result.rows == par_result.rows);
}

TEST_CASE("reals render as shortest round-trip text") {
    store::Catalog catalog;
    register_cubes(catalog);
    auto result = execute_sql(
        "SELECT ST_3DDistance(geom, ST_GeomFromText('POINT Z (-2 0.5 0.5)')) FROM drills LIMIT 2",
        catalog, seq());
    CHECK(result.rows[0][0] == "2");
    CHECK(result.rows[1][0] == "5");  // cube 2 starts at x=3, probe at x=-2
}
