#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tindb/geometry.hpp"

namespace tindb::sqlfe {

// Error taxonomy mirrors the SQLSTATE classes the wire layer reports.
enum class SqlErrorKind {
    Syntax,           // 42601
    UnknownFunction,  // 42883
    UnknownColumn,    // 42703
    UnknownTable,     // 42P01
    TypeError,        // 42804
    InvalidGeometry,  // 22023 (bad WKT inside ST_GeomFromText)
    Unsupported,      // 0A000
};

const char* sqlstate_for(SqlErrorKind kind);

class SqlError : public std::runtime_error {
  public:
    SqlError(SqlErrorKind kind_, std::string message, std::size_t position_ = 0)
        : std::runtime_error(std::move(message)), kind(kind_), position(position_) {}

    SqlErrorKind kind;
    std::size_t position;  // 1-based byte offset into the SQL text; 0 if n/a
};

enum class SpatialFunction { Volume, Distance3D, Intersects3D };

const char* spatial_function_name(SpatialFunction fn);  // lower-case, e.g. "st_volume"

// One argument of a spatial call: either a reference to the table's
// geometry column or a literal built by ST_GeomFromText('...').
struct SpatialArg {
    bool is_column = false;
    std::string column_name;           // when is_column
    std::optional<Geometry> literal;   // when !is_column
    std::string literal_text;          // canonical WKT, used for dedup keys
};

struct SpatialCall {
    SpatialFunction function = SpatialFunction::Volume;
    std::vector<SpatialArg> args;

    // Exactly one arg is a column reference (validated at parse time).
    std::size_t column_arg_index = 0;

    // Function name + literal WKT; calls with equal keys are evaluated once.
    std::string dedup_key;
};

enum class CompareOp { Lt, Le, Gt, Ge, Eq, Ne };

// Predicate expression tree. Leaves are numeric literals, `id` references,
// boolean literals, and spatial calls (by index into Statement::calls).
struct Expr {
    enum class Kind { Number, Bool, IdRef, CallRef, Compare, And, Or, Not };

    Kind kind = Kind::Number;
    double number = 0.0;
    bool boolean = false;
    std::size_t call_index = 0;
    CompareOp op = CompareOp::Eq;
    std::unique_ptr<Expr> lhs;  // Compare/And/Or; operand of Not
    std::unique_ptr<Expr> rhs;
    std::size_t position = 0;   // for error reporting
};

struct Projection {
    enum class Kind { Id, GeomColumn, Call, Number, Version };

    Kind kind = Kind::Id;
    std::size_t call_index = 0;   // Kind::Call
    std::string column_name;      // Kind::GeomColumn: referenced name; empty
                                  // when expanded from `*` (resolves to the
                                  // table's configured geometry column)
    std::string number_text;      // Kind::Number, verbatim literal text
    bool number_is_integer = false;
    std::string label;            // column name in the result set
};

enum class StatementKind { Select, Begin, Commit, Rollback, Empty };

struct Statement {
    StatementKind kind = StatementKind::Select;
    std::vector<Projection> projections;
    std::optional<std::string> source_table;
    std::unique_ptr<Expr> where;                // null when absent
    std::optional<std::int64_t> limit;
    std::vector<SpatialCall> calls;             // deduplicated

    // Every column name referenced as a geometry column anywhere in the
    // statement; the planner validates each against the table's column.
    std::vector<std::string> referenced_columns;
};

// Parses one statement of the subset grammar
//   SELECT <proj-list> [FROM <table> [WHERE <pred>] [LIMIT n]] [;]
// plus the transaction no-ops (BEGIN/COMMIT/ROLLBACK) and an empty
// statement. Spatial calls are extracted and deduplicated. Throws SqlError.
Statement parse_sql(const std::string& text);

// Splits a simple-query buffer into individual statements at top-level
// semicolons (quote-aware). Whitespace-only segments are dropped.
std::vector<std::string> split_statements(const std::string& text);

}  // namespace tindb::sqlfe
