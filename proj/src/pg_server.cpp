#include "tindb/pg_server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <utility>

namespace tindb::wire {

namespace {

constexpr const char* kProtocolViolation = "08P01";

// Deterministic per-connection secret; this server does not implement
// cancellation, the key only has to look plausible to clients.
std::uint32_t secret_for(std::uint32_t conn_id) {
    std::uint32_t x = conn_id * 2654435761u;
    x ^= x >> 16;
    return x ^ 0x9e3779b9u;
}

Bytes parameter_description_none() {
    Bytes payload;
    put_u16(payload, 0);
    return build_message('t', payload);
}

}  // namespace

AuthMode auth_mode_from_string(const std::string& name) {
    if (name == "trust") return AuthMode::Trust;
    if (name == "password") return AuthMode::Password;
    throw std::runtime_error("unknown auth mode \"" + name + "\" (expected trust or password)");
}

Session::Session(const ServerContext& ctx, std::uint32_t conn_id)
    : ctx_(ctx), conn_id_(conn_id) {}

bool Session::on_bytes(const std::uint8_t* data, std::size_t size, Bytes& out) {
    if (state_ == AuthState::Closed) return false;
    if (!decoder_.feed(data, size)) {
        append(out, error_response("FATAL", kProtocolViolation, decoder_.error()));
        state_ = AuthState::Closed;
        return false;
    }
    while (true) {
        auto msg = decoder_.next();
        if (!msg) {
            if (decoder_.failed()) {
                append(out, error_response("FATAL", kProtocolViolation, decoder_.error()));
                state_ = AuthState::Closed;
                return false;
            }
            return true;
        }
        bool keep = msg->startup ? handle_startup_frame(*msg, out) : handle_tagged(*msg, out);
        if (!keep) {
            state_ = AuthState::Closed;
            return false;
        }
    }
}

bool Session::handle_startup_frame(const WireMessage& msg, Bytes& out) {
    PayloadReader reader(msg.payload);
    auto code = reader.read_u32();
    if (!code) {
        append(out, error_response("FATAL", kProtocolViolation, "truncated startup packet"));
        return false;
    }
    if (*code == kSslRequestCode || *code == kGssEncRequestCode) {
        // Not supported; a single 'N' byte tells the client to continue
        // in the clear. Framing stays in startup mode.
        out.push_back(static_cast<std::uint8_t>('N'));
        return true;
    }
    if (*code == kCancelRequestCode) {
        // No cancellation support: drop the request connection silently.
        return false;
    }
    if (*code != kProtocolV3) {
        append(out, error_response("FATAL", "0A000",
                                   "unsupported frontend protocol " +
                                       std::to_string(*code >> 16) + "." +
                                       std::to_string(*code & 0xffff)));
        return false;
    }

    while (true) {
        auto key = reader.read_cstring();
        if (!key) {
            append(out, error_response("FATAL", kProtocolViolation, "malformed startup packet"));
            return false;
        }
        if (key->empty()) break;
        auto value = reader.read_cstring();
        if (!value) {
            append(out, error_response("FATAL", kProtocolViolation, "malformed startup packet"));
            return false;
        }
        if (*key == "user") user_ = *value;
        else if (*key == "database") database_ = *value;
        // Other parameters (application_name, options, ...) are ignored.
    }
    if (user_.empty()) {
        append(out, error_response("FATAL", "28000", "no PostgreSQL user name specified in startup packet"));
        return false;
    }
    if (database_.empty()) database_ = user_;
    decoder_.enter_normal_mode();

    if (ctx_.auth_mode == AuthMode::Password) {
        append(out, authentication_cleartext_password());
        state_ = AuthState::AwaitingPassword;
        return true;
    }
    finish_authentication(out);
    return true;
}

void Session::finish_authentication(Bytes& out) {
    append(out, authentication_ok());
    append(out, parameter_status("server_version", ctx_.server_version));
    append(out, parameter_status("server_encoding", "UTF8"));
    append(out, parameter_status("client_encoding", "UTF8"));
    append(out, parameter_status("DateStyle", "ISO, MDY"));
    append(out, parameter_status("integer_datetimes", "on"));
    append(out, parameter_status("standard_conforming_strings", "on"));
    append(out, backend_key_data(conn_id_, secret_for(conn_id_)));
    append(out, ready_for_query('I'));
    state_ = AuthState::Ready;
}

bool Session::handle_password(const WireMessage& msg, Bytes& out) {
    if (msg.tag != 'p') {
        append(out, error_response("FATAL", kProtocolViolation,
                                   "expected password response, got message type " +
                                       std::string(1, msg.tag)));
        return false;
    }
    PayloadReader reader(msg.payload);
    auto password = reader.read_cstring();
    auto it = ctx_.users.find(user_);
    if (!password || it == ctx_.users.end() || it->second != *password) {
        append(out, error_response("FATAL", "28P01",
                                   "password authentication failed for user \"" + user_ + "\""));
        return false;
    }
    finish_authentication(out);
    return true;
}

bool Session::handle_tagged(const WireMessage& msg, Bytes& out) {
    if (state_ == AuthState::AwaitingPassword) return handle_password(msg, out);
    if (state_ != AuthState::Ready) {
        append(out, error_response("FATAL", kProtocolViolation, "message before authentication"));
        return false;
    }

    // After an extended-protocol error, skip until Sync. Terminate always
    // works, and a simple Query implicitly resynchronizes.
    if (error_until_sync_ && msg.tag != 'S' && msg.tag != 'X' && msg.tag != 'Q') {
        return true;
    }

    switch (msg.tag) {
        case 'Q': {
            error_until_sync_ = false;
            PayloadReader reader(msg.payload);
            auto sql = reader.read_cstring();
            if (!sql) {
                append(out, error_response("FATAL", kProtocolViolation, "malformed Query message"));
                return false;
            }
            run_simple_query(*sql, out);
            return true;
        }
        case 'P': return handle_parse(msg, out);
        case 'B': return handle_bind(msg, out);
        case 'D': return handle_describe(msg, out);
        case 'E': return handle_execute(msg, out);
        case 'S':  // Sync
            error_until_sync_ = false;
            append(out, ready_for_query('I'));
            return true;
        case 'H':  // Flush: output is never buffered here, nothing to do
            return true;
        case 'C': {  // Close statement/portal
            append(out, close_complete());
            return true;
        }
        case 'X':  // Terminate
            return false;
        case 'p':
            append(out, error_response("FATAL", kProtocolViolation, "unexpected password message"));
            return false;
        default:
            append(out, error_response("FATAL", kProtocolViolation,
                                       "unsupported frontend message type " +
                                           std::string(1, msg.tag)));
            return false;
    }
}

void Session::send_sql_error(const sqlfe::SqlError& e, Bytes& out) {
    append(out, error_response("ERROR", sqlfe::sqlstate_for(e.kind), e.what(), e.position));
}

void Session::emit_result(const sqlfe::QueryResult& result, bool with_row_description, Bytes& out) {
    for (const auto& notice : result.notices) append(out, notice_response(notice));
    if (result.is_row_returning) {
        if (with_row_description) append(out, row_description(result.columns));
        for (const auto& row : result.rows) append(out, data_row(row));
    }
    append(out, command_complete(result.command_tag));
}

bool Session::run_one_statement(const std::string& sql, Bytes& out) {
    try {
        sqlfe::Statement stmt = sqlfe::parse_sql(sql);
        if (stmt.kind == sqlfe::StatementKind::Empty) {
            append(out, empty_query_response());
            return true;
        }
        sqlfe::QueryResult result = sqlfe::plan_and_execute(stmt, *ctx_.catalog, ctx_.exec_cfg);
        emit_result(result, true, out);
        return true;
    } catch (const sqlfe::SqlError& e) {
        send_sql_error(e, out);
        return false;
    } catch (const std::exception& e) {
        append(out, error_response("ERROR", "XX000", e.what()));
        return false;
    }
}

void Session::run_simple_query(const std::string& buffer, Bytes& out) {
    auto statements = sqlfe::split_statements(buffer);
    if (statements.empty()) {
        append(out, empty_query_response());
        append(out, ready_for_query('I'));
        return;
    }
    for (const auto& sql : statements) {
        // An error aborts the remainder of the query buffer, but never the
        // session: ReadyForQuery always follows.
        if (!run_one_statement(sql, out)) break;
    }
    append(out, ready_for_query('I'));
}

bool Session::handle_parse(const WireMessage& msg, Bytes& out) {
    PayloadReader reader(msg.payload);
    auto name = reader.read_cstring();
    auto query = reader.read_cstring();
    auto param_count = reader.read_u16();
    if (!name || !query || !param_count) {
        append(out, error_response("FATAL", kProtocolViolation, "malformed Parse message"));
        return false;
    }
    if (!name->empty()) {
        append(out, error_response("ERROR", "0A000", "named prepared statements are not supported"));
        error_until_sync_ = true;
        return true;
    }
    if (*param_count != 0) {
        append(out, error_response("ERROR", "0A000", "query parameters are not supported"));
        error_until_sync_ = true;
        return true;
    }
    try {
        prepared_ = sqlfe::parse_sql(*query);
        portal_bound_ = false;
        append(out, parse_complete());
        return true;
    } catch (const sqlfe::SqlError& e) {
        prepared_.reset();
        send_sql_error(e, out);
        error_until_sync_ = true;
        return true;
    }
}

bool Session::handle_bind(const WireMessage& msg, Bytes& out) {
    PayloadReader reader(msg.payload);
    auto portal = reader.read_cstring();
    auto statement = reader.read_cstring();
    auto format_count = reader.read_u16();
    if (!portal || !statement || !format_count) {
        append(out, error_response("FATAL", kProtocolViolation, "malformed Bind message"));
        return false;
    }
    for (std::uint16_t i = 0; i < *format_count; ++i) {
        if (!reader.read_u16()) {
            append(out, error_response("FATAL", kProtocolViolation, "malformed Bind message"));
            return false;
        }
    }
    if (!portal->empty() || !statement->empty()) {
        append(out, error_response("ERROR", "0A000", "named portals and prepared statements are not supported"));
        error_until_sync_ = true;
        return true;
    }
    auto param_count = reader.read_u16();
    if (!param_count) {
        append(out, error_response("FATAL", kProtocolViolation, "malformed Bind message"));
        return false;
    }
    if (*param_count != 0) {
        append(out, error_response("ERROR", "0A000", "query parameters are not supported"));
        error_until_sync_ = true;
        return true;
    }
    auto result_format_count = reader.read_u16();
    if (!result_format_count) {
        append(out, error_response("FATAL", kProtocolViolation, "malformed Bind message"));
        return false;
    }
    for (std::uint16_t i = 0; i < *result_format_count; ++i) {
        auto fmt = reader.read_u16();
        if (!fmt) {
            append(out, error_response("FATAL", kProtocolViolation, "malformed Bind message"));
            return false;
        }
        if (*fmt != 0) {
            append(out, error_response("ERROR", "0A000", "binary result format is not supported"));
            error_until_sync_ = true;
            return true;
        }
    }
    if (!prepared_) {
        append(out, error_response("ERROR", "26000", "no prepared statement to bind"));
        error_until_sync_ = true;
        return true;
    }
    portal_bound_ = true;
    append(out, bind_complete());
    return true;
}

bool Session::handle_describe(const WireMessage& msg, Bytes& out) {
    if (msg.payload.empty()) {
        append(out, error_response("FATAL", kProtocolViolation, "malformed Describe message"));
        return false;
    }
    char kind = static_cast<char>(msg.payload[0]);
    if (kind != 'S' && kind != 'P') {
        append(out, error_response("FATAL", kProtocolViolation, "malformed Describe message"));
        return false;
    }
    if (!prepared_) {
        append(out, error_response("ERROR", "26000", "no prepared statement to describe"));
        error_until_sync_ = true;
        return true;
    }
    try {
        auto columns = sqlfe::describe_statement(*prepared_, *ctx_.catalog);
        if (kind == 'S') append(out, parameter_description_none());
        if (columns.empty()) append(out, no_data());
        else append(out, row_description(columns));
        return true;
    } catch (const sqlfe::SqlError& e) {
        send_sql_error(e, out);
        error_until_sync_ = true;
        return true;
    }
}

bool Session::handle_execute(const WireMessage& msg, Bytes& out) {
    PayloadReader reader(msg.payload);
    auto portal = reader.read_cstring();
    auto max_rows = reader.read_u32();
    if (!portal || !max_rows) {
        append(out, error_response("FATAL", kProtocolViolation, "malformed Execute message"));
        return false;
    }
    if (!portal->empty()) {
        append(out, error_response("ERROR", "0A000", "named portals are not supported"));
        error_until_sync_ = true;
        return true;
    }
    if (!prepared_ || !portal_bound_) {
        append(out, error_response("ERROR", "34000", "portal does not exist"));
        error_until_sync_ = true;
        return true;
    }
    try {
        if (prepared_->kind == sqlfe::StatementKind::Empty) {
            append(out, empty_query_response());
            return true;
        }
        sqlfe::QueryResult result =
            sqlfe::plan_and_execute(*prepared_, *ctx_.catalog, ctx_.exec_cfg);
        // Row limits on portals are not honored; the whole result is sent.
        emit_result(result, false, out);
        return true;
    } catch (const sqlfe::SqlError& e) {
        send_sql_error(e, out);
        error_until_sync_ = true;
        return true;
    } catch (const std::exception& e) {
        append(out, error_response("ERROR", "XX000", e.what()));
        error_until_sync_ = true;
        return true;
    }
}

// --- socket server ---

Server::Server(ServerContext ctx) : ctx_(std::move(ctx)) {}

Server::~Server() { stop(); }

void Server::start(const std::string& listen_addr, std::uint16_t port) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw std::runtime_error("socket() failed: " + std::string(std::strerror(errno)));

    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, listen_addr.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::runtime_error("invalid listen address \"" + listen_addr + "\"");
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        std::string why = std::strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::runtime_error("cannot bind " + listen_addr + ":" + std::to_string(port) + ": " + why);
    }
    if (::listen(listen_fd_, 64) != 0) {
        std::string why = std::strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::runtime_error("listen() failed: " + why);
    }

    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    port_ = ntohs(bound.sin_port);

    stopping_ = false;
    accept_thread_ = std::thread([this] { accept_loop(); });
}

void Server::stop() {
    if (listen_fd_ < 0 && !accept_thread_.joinable()) return;
    stopping_ = true;
    if (listen_fd_ >= 0) {
        ::shutdown(listen_fd_, SHUT_RDWR);
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    if (accept_thread_.joinable()) accept_thread_.join();

    std::vector<std::thread> workers;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
        workers.swap(client_threads_);
    }
    for (auto& t : workers) {
        if (t.joinable()) t.join();
    }
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (int fd : client_fds_) ::close(fd);
        client_fds_.clear();
    }
}

void Server::accept_loop() {
    while (!stopping_) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (stopping_) break;
            if (errno == EINTR) continue;
            break;
        }
        int one = 1;
        ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
        std::uint32_t conn_id = next_conn_id_.fetch_add(1);
        std::lock_guard<std::mutex> lock(mutex_);
        client_fds_.push_back(fd);
        client_threads_.emplace_back([this, fd, conn_id] { client_loop(fd, conn_id); });
    }
}

void Server::client_loop(int fd, std::uint32_t conn_id) {
    Session session(ctx_, conn_id);
    std::uint8_t buffer[65536];
    bool open = true;
    while (open && !stopping_) {
        ssize_t n = ::recv(fd, buffer, sizeof(buffer), 0);
        if (n <= 0) break;
        Bytes out;
        open = session.on_bytes(buffer, static_cast<std::size_t>(n), out);
        std::size_t sent = 0;
        while (sent < out.size()) {
            ssize_t w = ::send(fd, out.data() + sent, out.size() - sent, MSG_NOSIGNAL);
            if (w <= 0) {
                open = false;
                break;
            }
            sent += static_cast<std::size_t>(w);
        }
    }
    ::shutdown(fd, SHUT_RDWR);
    std::lock_guard<std::mutex> lock(mutex_);
    for (auto it = client_fds_.begin(); it != client_fds_.end(); ++it) {
        if (*it == fd) {
            ::close(fd);
            client_fds_.erase(it);
            break;
        }
    }
}

}  // namespace tindb::wire
