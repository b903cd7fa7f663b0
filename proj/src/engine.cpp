#include "tindb/engine.hpp"

#include <variant>

#include "tindb/wkt.hpp"

namespace tindb::sqlfe {

const char* engine_version() {
    return "tindb 0.1.0 (PostgreSQL wire protocol 3.0)";
}

namespace {

using kernels::BatchOp;
using kernels::KernelResult;
using kernels::TypeMismatch;

BatchOp batch_op_for(SpatialFunction fn) {
    switch (fn) {
        case SpatialFunction::Volume: return BatchOp::Volume;
        case SpatialFunction::Distance3D: return BatchOp::Distance;
        case SpatialFunction::Intersects3D: return BatchOp::Intersects;
    }
    return BatchOp::Volume;
}

std::uint32_t call_type_oid(SpatialFunction fn) {
    return fn == SpatialFunction::Intersects3D ? kOidBool : kOidFloat8;
}

// Column layout; `geom_column` names the table's geometry column for
// star-expanded projections and is empty for table-less statements.
std::vector<ColumnDesc> columns_for(const Statement& stmt, const std::string& geom_column) {
    std::vector<ColumnDesc> cols;
    cols.reserve(stmt.projections.size());
    for (const auto& p : stmt.projections) {
        ColumnDesc col;
        col.name = p.label;
        switch (p.kind) {
            case Projection::Kind::Id: col.type_oid = kOidInt8; break;
            case Projection::Kind::GeomColumn:
                col.type_oid = kOidText;
                if (col.name.empty()) col.name = geom_column;
                break;
            case Projection::Kind::Call:
                col.type_oid = call_type_oid(stmt.calls[p.call_index].function);
                break;
            case Projection::Kind::Number:
                col.type_oid = p.number_is_integer ? kOidInt8 : kOidFloat8;
                break;
            case Projection::Kind::Version: col.type_oid = kOidText; break;
        }
        cols.push_back(std::move(col));
    }
    return cols;
}

void validate_columns(const Statement& stmt, const store::GeometryTable& table) {
    for (const auto& name : stmt.referenced_columns) {
        if (name != table.geom_column)
            throw SqlError(SqlErrorKind::UnknownColumn,
                           "column \"" + name + "\" does not exist");
    }
}

using Value = std::variant<double, bool>;

Value eval_expr(const Expr& e, std::int64_t id,
                const std::vector<std::vector<KernelResult>>& call_values, std::size_t row) {
    switch (e.kind) {
        case Expr::Kind::Number: return e.number;
        case Expr::Kind::Bool: return e.boolean;
        case Expr::Kind::IdRef: return static_cast<double>(id);
        case Expr::Kind::CallRef: {
            const auto& v = call_values[e.call_index][row].value;
            if (const auto* d = std::get_if<double>(&v)) return *d;
            if (const auto* b = std::get_if<bool>(&v)) return *b;
            return false;  // unreachable: mismatched rows are excluded earlier
        }
        case Expr::Kind::Compare: {
            const Value l = eval_expr(*e.lhs, id, call_values, row);
            const Value r = eval_expr(*e.rhs, id, call_values, row);
            if (std::holds_alternative<bool>(l)) {
                const bool bl = std::get<bool>(l);
                const bool br = std::get<bool>(r);
                return e.op == CompareOp::Eq ? bl == br : bl != br;
            }
            const double dl = std::get<double>(l);
            const double dr = std::get<double>(r);
            switch (e.op) {
                case CompareOp::Lt: return dl < dr;
                case CompareOp::Le: return dl <= dr;
                case CompareOp::Gt: return dl > dr;
                case CompareOp::Ge: return dl >= dr;
                case CompareOp::Eq: return dl == dr;
                case CompareOp::Ne: return dl != dr;
            }
            return false;
        }
        case Expr::Kind::And:
            return std::get<bool>(eval_expr(*e.lhs, id, call_values, row)) &&
                   std::get<bool>(eval_expr(*e.rhs, id, call_values, row));
        case Expr::Kind::Or:
            return std::get<bool>(eval_expr(*e.lhs, id, call_values, row)) ||
                   std::get<bool>(eval_expr(*e.rhs, id, call_values, row));
        case Expr::Kind::Not:
            return !std::get<bool>(eval_expr(*e.lhs, id, call_values, row));
    }
    return false;
}

std::string render_kernel_value(const kernels::KernelValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
    if (const auto* b = std::get_if<bool>(&v)) return *b ? "t" : "f";
    return "";
}

QueryResult command_only(std::string tag, std::string notice = {}) {
    QueryResult r;
    r.command_tag = std::move(tag);
    if (!notice.empty()) r.notices.push_back(std::move(notice));
    return r;
}

QueryResult execute_tableless(const Statement& stmt) {
    QueryResult result;
    result.is_row_returning = true;
    result.columns = columns_for(stmt, "");
    std::vector<std::string> row;
    row.reserve(stmt.projections.size());
    for (const auto& p : stmt.projections) {
        if (p.kind == Projection::Kind::Number) {
            row.push_back(p.number_text);
        } else {
            row.push_back(engine_version());
        }
    }
    result.rows.push_back(std::move(row));
    result.command_tag = "SELECT 1";
    return result;
}

}  // namespace

std::vector<ColumnDesc> describe_statement(const Statement& stmt, const store::Catalog& catalog) {
    if (stmt.kind != StatementKind::Select) return {};
    if (!stmt.source_table) return columns_for(stmt, "");
    store::TableSnapshot snapshot;
    try {
        snapshot = catalog.scan(*stmt.source_table);
    } catch (const store::UnknownTable&) {
        throw SqlError(SqlErrorKind::UnknownTable,
                       "relation \"" + *stmt.source_table + "\" does not exist");
    } catch (const store::TableNotReady& ex) {
        throw SqlError(SqlErrorKind::Unsupported, ex.what());
    }
    validate_columns(stmt, *snapshot);
    return columns_for(stmt, snapshot->geom_column);
}

QueryResult plan_and_execute(const Statement& stmt, const store::Catalog& catalog,
                             const kernels::ExecutorConfig& cfg) {
    switch (stmt.kind) {
        case StatementKind::Begin:
            return command_only("BEGIN", "transactions are not supported; BEGIN is a no-op");
        case StatementKind::Commit:
            return command_only("COMMIT", "transactions are not supported; COMMIT is a no-op");
        case StatementKind::Rollback:
            return command_only("ROLLBACK",
                                "transactions are not supported; ROLLBACK is a no-op");
        case StatementKind::Empty: return command_only("");
        case StatementKind::Select: break;
    }

    if (!stmt.source_table) return execute_tableless(stmt);

    store::TableSnapshot snapshot;
    try {
        snapshot = catalog.scan(*stmt.source_table);
    } catch (const store::UnknownTable&) {
        throw SqlError(SqlErrorKind::UnknownTable,
                       "relation \"" + *stmt.source_table + "\" does not exist");
    } catch (const store::TableNotReady& ex) {
        throw SqlError(SqlErrorKind::Unsupported, ex.what());
    }
    validate_columns(stmt, *snapshot);

    QueryResult result;
    result.is_row_returning = true;
    result.columns = columns_for(stmt, snapshot->geom_column);

    // Every distinct spatial call runs over the full snapshot; WHERE and
    // LIMIT never shrink the kernel batches.
    std::vector<std::vector<KernelResult>> call_values;
    call_values.reserve(stmt.calls.size());
    for (const auto& call : stmt.calls) {
        std::optional<Geometry> argument;
        for (const auto& arg : call.args) {
            if (!arg.is_column) argument = arg.literal;
        }
        call_values.push_back(
            kernels::run_batch(batch_op_for(call.function), snapshot->records, argument, cfg));
        result.stats.batches_run += 1;
        result.stats.kernel_records_evaluated += snapshot->records.size();
    }

    const std::size_t limit =
        stmt.limit ? static_cast<std::size_t>(*stmt.limit) : snapshot->records.size();

    for (std::size_t i = 0; i < snapshot->records.size(); ++i) {
        if (result.rows.size() >= limit) break;
        const auto& record = snapshot->records[i];

        bool mismatched = false;
        for (const auto& values : call_values) {
            if (values[i].is_error()) {
                mismatched = true;
                break;
            }
        }
        if (mismatched) {
            result.stats.rows_excluded_by_errors += 1;
            continue;
        }

        if (stmt.where) {
            const Value keep = eval_expr(*stmt.where, record.id, call_values, i);
            if (!std::get<bool>(keep)) continue;
        }

        std::vector<std::string> row;
        row.reserve(stmt.projections.size());
        for (const auto& p : stmt.projections) {
            switch (p.kind) {
                case Projection::Kind::Id: row.push_back(std::to_string(record.id)); break;
                case Projection::Kind::GeomColumn:
                    row.push_back(serialize_wkt(record.geometry));
                    break;
                case Projection::Kind::Call:
                    row.push_back(render_kernel_value(call_values[p.call_index][i].value));
                    break;
                case Projection::Kind::Number: row.push_back(p.number_text); break;
                case Projection::Kind::Version: row.push_back(engine_version()); break;
            }
        }
        result.rows.push_back(std::move(row));
    }

    if (result.stats.rows_excluded_by_errors > 0) {
        result.notices.push_back(std::to_string(result.stats.rows_excluded_by_errors) +
                                 " row(s) excluded: spatial operator type mismatch");
    }
    result.command_tag = "SELECT " + std::to_string(result.rows.size());
    return result;
}

QueryResult execute_sql(const std::string& sql, const store::Catalog& catalog,
                        const kernels::ExecutorConfig& cfg) {
    return plan_and_execute(parse_sql(sql), catalog, cfg);
}

}  // namespace tindb::sqlfe
