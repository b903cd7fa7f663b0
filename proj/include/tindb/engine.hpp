#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tindb/batch.hpp"
#include "tindb/executor.hpp"
#include "tindb/sqlfe.hpp"
#include "tindb/store.hpp"

namespace tindb::sqlfe {

// PostgreSQL type OIDs used in result descriptions.
inline constexpr std::uint32_t kOidInt8 = 20;
inline constexpr std::uint32_t kOidBool = 16;
inline constexpr std::uint32_t kOidFloat8 = 701;
inline constexpr std::uint32_t kOidText = 25;

struct ColumnDesc {
    std::string name;
    std::uint32_t type_oid = kOidText;
};

// Observable execution counters backing the full-scan contract: every
// distinct spatial call is one batch over the entire table, independent of
// WHERE selectivity and LIMIT.
struct ExecutionStats {
    std::size_t batches_run = 0;
    std::size_t kernel_records_evaluated = 0;
    std::size_t rows_excluded_by_errors = 0;
};

// Rows hold pre-rendered text cells (the wire sends text format only).
struct QueryResult {
    std::vector<ColumnDesc> columns;
    std::vector<std::vector<std::string>> rows;
    std::string command_tag;       // e.g. "SELECT 3", "BEGIN"
    std::vector<std::string> notices;
    ExecutionStats stats;
    bool is_row_returning = false;
};

// Result-column layout of a statement without executing it (extended
// protocol Describe). Throws SqlError for invalid statements.
std::vector<ColumnDesc> describe_statement(const Statement& stmt, const store::Catalog& catalog);

// Executes one parsed statement:
//   1. every distinct SpatialCall is evaluated with run_batch over the FULL
//      table snapshot;
//   2. WHERE filters per record over kernel outputs and id;
//   3. projections and LIMIT apply in record order.
// Records whose referenced calls produced a TypeMismatch are excluded and
// counted in a notice. Throws SqlError (unknown table/column, type errors).
QueryResult plan_and_execute(const Statement& stmt, const store::Catalog& catalog,
                             const kernels::ExecutorConfig& cfg);

// parse_sql + plan_and_execute in one step.
QueryResult execute_sql(const std::string& sql, const store::Catalog& catalog,
                        const kernels::ExecutorConfig& cfg);

// Version string reported by SELECT version() and the server banner.
const char* engine_version();

}  // namespace tindb::sqlfe
