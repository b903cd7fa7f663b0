#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tindb/store_types.hpp"

namespace tindb::store {

class StoreError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnknownTable : public StoreError {
  public:
    explicit UnknownTable(const std::string& name)
        : StoreError("unknown table \"" + name + "\""), table_name(name) {}
    std::string table_name;
};

class TableNotReady : public StoreError {
  public:
    explicit TableNotReady(const std::string& name)
        : StoreError("table \"" + name + "\" is still loading"), table_name(name) {}
    std::string table_name;
};

class DuplicateId : public StoreError {
  public:
    DuplicateId(std::int64_t id_, std::size_t line_)
        : StoreError("duplicate id " + std::to_string(id_) + " at line " + std::to_string(line_)),
          id(id_),
          line(line_) {}
    std::int64_t id;
    std::size_t line;
};

// CSV ingestion failure; `line` is 1-based.
class CsvError : public StoreError {
  public:
    CsvError(std::string message, std::size_t line_)
        : StoreError("line " + std::to_string(line_) + ": " + std::move(message)), line(line_) {}
    std::size_t line;
};

// Reads `id,WKT` lines into a Ready table. The WKT field may be wrapped in
// double quotes to protect its commas ("" escapes a quote). An optional
// header line `id,geometry` (or `id,<geom_column>`) is skipped. Record
// order equals file order.
GeometryTable load_csv(const std::string& table_name, const std::string& path,
                       const std::string& geom_column = "geom");

// Same contract, parsing from an in-memory buffer (the file loader and the
// upstream mirror both funnel here).
GeometryTable load_csv_text(const std::string& table_name, const std::string& text,
                            const std::string& geom_column = "geom");

// Reads a file holding one bare WKT literal into a Ready single-record
// table (id 1). This is the `ore.wkt` half of a generated dataset.
GeometryTable load_wkt_file(const std::string& table_name, const std::string& path,
                            const std::string& geom_column = "geom");

// Named-table registry with snapshot reads: scans return a shared pointer
// to an immutable table, so reloads never invalidate running queries.
class Catalog {
  public:
    // Publishes the table under its name, replacing any previous version.
    void register_table(GeometryTable table);

    // Immutable snapshot of a Ready table.
    TableSnapshot scan(const std::string& name) const;

    bool has_table(const std::string& name) const;

    std::vector<std::string> table_names() const;

  private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, TableSnapshot> tables_;
};

}  // namespace tindb::store
