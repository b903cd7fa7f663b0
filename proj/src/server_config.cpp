#include "tindb/server_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tindb/upstream.hpp"

namespace tindb::server {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
    throw std::runtime_error("config: " + message);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) config_error("unknown key \"" + it.key() + "\" in " + where);
    }
}

kernels::Backend backend_from_string(const std::string& name) {
    if (name == "sequential") return kernels::Backend::Sequential;
    if (name == "parallel") return kernels::Backend::Parallel;
    config_error("unknown backend \"" + name + "\" (expected sequential or parallel)");
}

TableConfig parse_table(const json& obj) {
    if (!obj.is_object()) config_error("each tables[] entry must be an object");
    reject_unknown_keys(obj, {"name", "source", "path", "dsn", "source_table", "id_column", "geom_column"},
                        "tables[]");
    TableConfig table;
    if (!obj.contains("name") || !obj["name"].is_string()) {
        config_error("tables[] entry needs a string \"name\"");
    }
    table.name = obj["name"].get<std::string>();

    std::string source = obj.value("source", std::string("csv"));
    if (source == "csv") {
        table.source = TableConfig::Source::Csv;
        if (!obj.contains("path")) config_error("csv table \"" + table.name + "\" needs \"path\"");
        table.path = obj["path"].get<std::string>();
    } else if (source == "upstream") {
        table.source = TableConfig::Source::Upstream;
        if (!obj.contains("dsn")) config_error("upstream table \"" + table.name + "\" needs \"dsn\"");
        table.dsn = obj["dsn"].get<std::string>();
        table.source_table = obj.value("source_table", table.name);
        table.id_column = obj.value("id_column", std::string("id"));
    } else {
        config_error("table \"" + table.name + "\": unknown source \"" + source +
                     "\" (expected csv or upstream)");
    }
    table.geom_column = obj.value("geom_column", std::string("geom"));
    return table;
}

}  // namespace

ServerConfig parse_config_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        config_error(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) config_error("top level must be a JSON object");
    reject_unknown_keys(root,
                        {"listen_addr", "port", "auth_mode", "users", "backend", "worker_count",
                         "chunk_size", "tables"},
                        "top level");

    ServerConfig config;
    config.listen_addr = root.value("listen_addr", config.listen_addr);
    if (root.contains("port")) {
        auto port = root["port"].get<std::int64_t>();
        if (port < 0 || port > 65535) config_error("port out of range");
        config.port = static_cast<std::uint16_t>(port);
    }
    if (root.contains("auth_mode")) {
        config.auth_mode = wire::auth_mode_from_string(root["auth_mode"].get<std::string>());
    }
    if (root.contains("users")) {
        if (!root["users"].is_object()) config_error("\"users\" must map user names to passwords");
        for (auto it = root["users"].begin(); it != root["users"].end(); ++it) {
            config.users[it.key()] = it.value().get<std::string>();
        }
    }
    if (root.contains("backend")) {
        config.exec.backend = backend_from_string(root["backend"].get<std::string>());
    }
    if (root.contains("worker_count")) {
        auto workers = root["worker_count"].get<std::int64_t>();
        if (workers < 1) config_error("worker_count must be positive");
        config.exec.worker_count = static_cast<int>(workers);
    } else if (config.exec.backend == kernels::Backend::Parallel) {
        config.exec.worker_count = static_cast<int>(kernels::ExecutorConfig::default_worker_count());
    }
    if (root.contains("chunk_size")) {
        auto chunk = root["chunk_size"].get<std::int64_t>();
        if (chunk < 1) config_error("chunk_size must be positive");
        config.exec.chunk_size = static_cast<std::size_t>(chunk);
    }
    if (root.contains("tables")) {
        if (!root["tables"].is_array()) config_error("\"tables\" must be an array");
        for (const auto& entry : root["tables"]) config.tables.push_back(parse_table(entry));
    }
    if (config.auth_mode == wire::AuthMode::Password && config.users.empty()) {
        config_error("auth_mode \"password\" requires at least one entry in \"users\"");
    }
    return config;
}

ServerConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) config_error("cannot open \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_json(buffer.str());
}

void apply_env_overrides(ServerConfig& config) {
    if (const char* port = std::getenv("TINDB_PORT")) {
        try {
            int value = std::stoi(port);
            if (value < 0 || value > 65535) throw std::out_of_range("port");
            config.port = static_cast<std::uint16_t>(value);
        } catch (const std::exception&) {
            config_error("TINDB_PORT=\"" + std::string(port) + "\" is not a valid port");
        }
    }
    if (const char* mode = std::getenv("TINDB_AUTH_MODE")) {
        config.auth_mode = wire::auth_mode_from_string(mode);
    }
}

void load_tables(const ServerConfig& config, store::Catalog& catalog, const std::string& base_dir) {
    for (const auto& table : config.tables) {
        if (table.source == TableConfig::Source::Csv) {
            std::string path = table.path;
            if (!base_dir.empty() && !path.empty() && path.front() != '/') {
                path = base_dir + "/" + path;
            }
            // A bare-WKT file serves as a single-record table (the ore.wkt
            // half of a generated dataset); anything else is id,WKT CSV.
            if (path.size() > 4 && path.compare(path.size() - 4, 4, ".wkt") == 0) {
                catalog.register_table(store::load_wkt_file(table.name, path, table.geom_column));
            } else {
                catalog.register_table(store::load_csv(table.name, path, table.geom_column));
            }
        } else {
            catalog.register_table(store::mirror_upstream(table.name, store::parse_dsn(table.dsn),
                                                          table.source_table, table.id_column,
                                                          table.geom_column));
        }
    }
}

}  // namespace tindb::server
