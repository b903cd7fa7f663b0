#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tindb/executor.hpp"
#include "tindb/pg_server.hpp"
#include "tindb/store.hpp"

namespace tindb::server {

struct TableConfig {
    enum class Source { Csv, Upstream };

    std::string name;
    Source source = Source::Csv;
    std::string path;          // csv source
    std::string dsn;           // upstream source, "host=... port=..." form
    std::string source_table;  // upstream; defaults to `name`
    std::string id_column = "id";
    std::string geom_column = "geom";
};

struct ServerConfig {
    std::string listen_addr = "127.0.0.1";
    std::uint16_t port = 5433;
    wire::AuthMode auth_mode = wire::AuthMode::Trust;
    std::map<std::string, std::string> users;
    kernels::ExecutorConfig exec;
    std::vector<TableConfig> tables;
};

// JSON config loading. Unknown keys are rejected so typos surface early.
// Throws std::runtime_error with a descriptive message.
ServerConfig parse_config_json(const std::string& text);
ServerConfig load_config_file(const std::string& path);

// TINDB_PORT and TINDB_AUTH_MODE override the file values when set.
void apply_env_overrides(ServerConfig& config);

// Loads every configured table into the catalog (CSV files directly,
// upstream tables by mirroring). Relative CSV paths resolve against
// `base_dir` when given.
void load_tables(const ServerConfig& config, store::Catalog& catalog,
                 const std::string& base_dir = "");

}  // namespace tindb::server
