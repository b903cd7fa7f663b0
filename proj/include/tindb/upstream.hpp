#pragma once

#include <cstdint>
#include <string>

#include "tindb/store.hpp"

namespace tindb::store {

class ConnectionFailed : public StoreError {
  public:
    using StoreError::StoreError;
};

// The upstream server rejected us; carries its error message verbatim.
class UpstreamError : public StoreError {
  public:
    using StoreError::StoreError;
};

struct UpstreamDsn {
    std::string host = "127.0.0.1";
    std::uint16_t port = 5432;
    std::string database;
    std::string user;
    std::string password;
};

// Parses "host=... port=... dbname=... user=... password=..." key/value
// pairs (whitespace separated). Unknown keys are ignored.
UpstreamDsn parse_dsn(const std::string& text);

// Connects to a PostgreSQL-compatible server, runs
//   SELECT <id_column>, <geom_column> FROM <source_table>
// and materializes the result as a Ready table. Row validation funnels
// through the same path as CSV ingestion, so both sources accept and
// reject exactly the same data. Throws ConnectionFailed when no connection
// can be established and UpstreamError when the server reports an error.
GeometryTable mirror_upstream(const std::string& table_name, const UpstreamDsn& dsn,
                              const std::string& source_table, const std::string& id_column,
                              const std::string& geom_column);

}  // namespace tindb::store
