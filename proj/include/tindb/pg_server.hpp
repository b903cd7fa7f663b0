#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tindb/engine.hpp"
#include "tindb/pg_protocol.hpp"
#include "tindb/store.hpp"

namespace tindb::wire {

enum class AuthMode { Trust, Password };

enum class AuthState { AwaitingStartup, AwaitingPassword, Ready, Closed };

// Everything a session needs, shared across all connections.
struct ServerContext {
    const store::Catalog* catalog = nullptr;
    kernels::ExecutorConfig exec_cfg;
    AuthMode auth_mode = AuthMode::Trust;
    std::map<std::string, std::string> users;  // user -> cleartext password
    std::string server_version = "14.0";
};

// One connection's protocol state machine, fully decoupled from sockets:
// bytes in, bytes out. This is what the framing fuzzer drives directly.
class Session {
  public:
    Session(const ServerContext& ctx, std::uint32_t conn_id);

    // Feeds raw client bytes; protocol output is appended to `out`.
    // Returns false when the connection must close (after flushing `out`).
    bool on_bytes(const std::uint8_t* data, std::size_t size, Bytes& out);

    AuthState auth_state() const { return state_; }
    const std::string& user() const { return user_; }

  private:
    bool handle_startup_frame(const WireMessage& msg, Bytes& out);
    bool handle_tagged(const WireMessage& msg, Bytes& out);
    bool handle_password(const WireMessage& msg, Bytes& out);
    void finish_authentication(Bytes& out);
    void run_simple_query(const std::string& buffer, Bytes& out);
    bool run_one_statement(const std::string& sql, Bytes& out);
    void emit_result(const sqlfe::QueryResult& result, bool with_row_description, Bytes& out);
    void send_sql_error(const sqlfe::SqlError& e, Bytes& out);

    bool handle_parse(const WireMessage& msg, Bytes& out);
    bool handle_bind(const WireMessage& msg, Bytes& out);
    bool handle_describe(const WireMessage& msg, Bytes& out);
    bool handle_execute(const WireMessage& msg, Bytes& out);

    const ServerContext& ctx_;
    std::uint32_t conn_id_;
    FrameDecoder decoder_;
    AuthState state_ = AuthState::AwaitingStartup;
    std::string user_;
    std::string database_;

    // Extended-protocol state: one unnamed prepared statement, no portals.
    std::optional<sqlfe::Statement> prepared_;
    bool portal_bound_ = false;
    bool error_until_sync_ = false;
};

// TCP endpoint: one thread per connection, graceful stop. Bind with port 0
// to let the OS choose (the bound port is then available via port()).
class Server {
  public:
    explicit Server(ServerContext ctx);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Binds and starts accepting. Throws std::runtime_error on failure.
    void start(const std::string& listen_addr, std::uint16_t port);

    std::uint16_t port() const { return port_; }

    // Stops accepting, closes live connections, joins all threads.
    void stop();

  private:
    void accept_loop();
    void client_loop(int fd, std::uint32_t conn_id);

    ServerContext ctx_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::atomic<std::uint32_t> next_conn_id_{1};
    std::thread accept_thread_;
    std::mutex mutex_;
    std::vector<std::thread> client_threads_;
    std::vector<int> client_fds_;
};

AuthMode auth_mode_from_string(const std::string& name);  // "trust" | "password"

}  // namespace tindb::wire
