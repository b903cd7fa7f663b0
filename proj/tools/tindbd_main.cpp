#include <csignal>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tindb/server_config.hpp"
#include "tindb/store.hpp"
#include "tindb/upstream.hpp"

namespace {

// "name=path[:geom_column]" CSV table flag.
tindb::server::TableConfig parse_table_flag(const std::string& flag) {
    auto eq = flag.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw CLI::ValidationError("--table", "expected name=path[:geom_column]");
    }
    tindb::server::TableConfig table;
    table.name = flag.substr(0, eq);
    std::string rest = flag.substr(eq + 1);
    auto colon = rest.rfind(':');
    if (colon != std::string::npos && rest.find('/') < colon) {
        table.geom_column = rest.substr(colon + 1);
        rest = rest.substr(0, colon);
    }
    table.path = rest;
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tindbd: in-memory 3D spatial query server speaking the PostgreSQL wire protocol"};

    std::string config_path;
    std::string listen_addr;
    int port = -1;
    std::string auth_mode;
    std::string backend;
    int workers = 0;
    long long chunk_size = 0;
    std::vector<std::string> table_flags;
    std::vector<std::string> user_flags;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--listen-addr", listen_addr, "address to bind (default 127.0.0.1)");
    app.add_option("--port", port, "TCP port; 0 picks a free port")->check(CLI::Range(0, 65535));
    app.add_option("--auth-mode", auth_mode, "trust or password");
    app.add_option("--backend", backend, "sequential or parallel");
    app.add_option("--workers", workers, "worker threads for the parallel backend");
    app.add_option("--chunk-size", chunk_size, "faces per work unit");
    app.add_option("--table", table_flags, "CSV table as name=path[:geom_column] (repeatable)");
    app.add_option("--user", user_flags, "user as name:password (repeatable)");

    CLI11_PARSE(app, argc, argv);

    try {
        tindb::server::ServerConfig config;
        if (!config_path.empty()) {
            config = tindb::server::load_config_file(config_path);
            // Relative csv paths in the file resolve against the file's
            // directory; --table flags below stay relative to the cwd.
            const auto base = std::filesystem::path(config_path).parent_path();
            if (!base.empty()) {
                for (auto& table : config.tables) {
                    if (table.source == tindb::server::TableConfig::Source::Csv &&
                        !table.path.empty() && table.path.front() != '/') {
                        table.path = (base / table.path).string();
                    }
                }
            }
        }
        tindb::server::apply_env_overrides(config);

        if (!listen_addr.empty()) config.listen_addr = listen_addr;
        if (port >= 0) config.port = static_cast<std::uint16_t>(port);
        if (!auth_mode.empty()) config.auth_mode = tindb::wire::auth_mode_from_string(auth_mode);
        if (!backend.empty()) {
            config.exec.backend = backend == "parallel" ? tindb::kernels::Backend::Parallel
                                                        : tindb::kernels::Backend::Sequential;
            if (backend != "parallel" && backend != "sequential") {
                std::fprintf(stderr, "tindbd: unknown backend \"%s\"\n", backend.c_str());
                return 1;
            }
        }
        if (workers > 0) config.exec.worker_count = workers;
        else if (config.exec.backend == tindb::kernels::Backend::Parallel &&
                 config.exec.worker_count <= 1) {
            config.exec.worker_count =
                static_cast<int>(tindb::kernels::ExecutorConfig::default_worker_count());
        }
        if (chunk_size > 0) config.exec.chunk_size = static_cast<std::size_t>(chunk_size);
        for (const auto& flag : table_flags) config.tables.push_back(parse_table_flag(flag));
        for (const auto& flag : user_flags) {
            auto colon = flag.find(':');
            if (colon == std::string::npos) {
                std::fprintf(stderr, "tindbd: --user expects name:password\n");
                return 1;
            }
            config.users[flag.substr(0, colon)] = flag.substr(colon + 1);
        }

        // Block shutdown signals before any thread exists so every thread
        // inherits the mask; the main thread then waits on sigwait below.
        sigset_t signals;
        sigemptyset(&signals);
        sigaddset(&signals, SIGINT);
        sigaddset(&signals, SIGTERM);
        pthread_sigmask(SIG_BLOCK, &signals, nullptr);

        tindb::store::Catalog catalog;
        tindb::server::load_tables(config, catalog);
        for (const auto& name : catalog.table_names()) {
            std::printf("loaded table \"%s\" (%zu records)\n", name.c_str(),
                        catalog.scan(name)->size());
        }

        tindb::wire::ServerContext ctx;
        ctx.catalog = &catalog;
        ctx.exec_cfg = config.exec;
        ctx.auth_mode = config.auth_mode;
        ctx.users = config.users;

        tindb::wire::Server server(ctx);
        server.start(config.listen_addr, config.port);
        std::printf("listening on %s:%u\n", config.listen_addr.c_str(), server.port());
        std::fflush(stdout);

        int caught = 0;
        sigwait(&signals, &caught);
        std::printf("shutting down (signal %d)\n", caught);
        server.stop();
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "tindbd: %s\n", e.what());
        return 1;
    }
}
