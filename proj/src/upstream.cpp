#include "tindb/upstream.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <sstream>

#include "tindb/pg_protocol.hpp"

namespace tindb::store {

namespace {

using wire::Bytes;
using wire::FrameDecoder;
using wire::PayloadReader;
using wire::WireMessage;

class Connection {
  public:
    Connection(const UpstreamDsn& dsn) : dsn_(dsn) {
        decoder_.enter_normal_mode();  // server messages are always tagged
        open_socket();
    }

    ~Connection() {
        if (fd_ >= 0) ::close(fd_);
    }

    void send_startup() {
        Bytes payload;
        wire::put_u32(payload, wire::kProtocolV3);
        append_cstring(payload, "user");
        append_cstring(payload, dsn_.user);
        if (!dsn_.database.empty()) {
            append_cstring(payload, "database");
            append_cstring(payload, dsn_.database);
        }
        payload.push_back(0);

        Bytes frame;
        wire::put_u32(frame, static_cast<std::uint32_t>(payload.size() + 4));
        frame.insert(frame.end(), payload.begin(), payload.end());
        send_all(frame);
    }

    void send_password() {
        Bytes payload;
        append_cstring(payload, dsn_.password);
        send_all(wire::build_message('p', payload));
    }

    void send_query(const std::string& sql) {
        Bytes payload;
        append_cstring(payload, sql);
        send_all(wire::build_message('Q', payload));
    }

    void send_terminate() { send_all(wire::build_message('X', {})); }

    // Blocks until a complete server message is available.
    WireMessage next_message() {
        while (true) {
            if (auto msg = decoder_.next()) return std::move(*msg);
            if (decoder_.failed()) {
                throw UpstreamError("malformed server response: " + decoder_.error());
            }
            std::uint8_t buffer[65536];
            ssize_t n = ::recv(fd_, buffer, sizeof(buffer), 0);
            if (n < 0) {
                throw ConnectionFailed("read from " + endpoint() + " failed: " +
                                       std::string(std::strerror(errno)));
            }
            if (n == 0) throw ConnectionFailed("connection to " + endpoint() + " closed unexpectedly");
            if (!decoder_.feed(buffer, static_cast<std::size_t>(n))) {
                throw UpstreamError("malformed server response: " + decoder_.error());
            }
        }
    }

  private:
    static void append_cstring(Bytes& out, const std::string& s) {
        out.insert(out.end(), s.begin(), s.end());
        out.push_back(0);
    }

    std::string endpoint() const { return dsn_.host + ":" + std::to_string(dsn_.port); }

    void open_socket() {
        addrinfo hints{};
        hints.ai_family = AF_INET;
        hints.ai_socktype = SOCK_STREAM;
        addrinfo* res = nullptr;
        std::string port_text = std::to_string(dsn_.port);
        int rc = ::getaddrinfo(dsn_.host.c_str(), port_text.c_str(), &hints, &res);
        if (rc != 0 || res == nullptr) {
            throw ConnectionFailed("cannot resolve " + endpoint() + ": " + ::gai_strerror(rc));
        }
        fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
        if (fd_ < 0) {
            ::freeaddrinfo(res);
            throw ConnectionFailed("socket() failed: " + std::string(std::strerror(errno)));
        }
        if (::connect(fd_, res->ai_addr, res->ai_addrlen) != 0) {
            std::string why = std::strerror(errno);
            ::freeaddrinfo(res);
            ::close(fd_);
            fd_ = -1;
            throw ConnectionFailed("cannot connect to " + endpoint() + ": " + why);
        }
        ::freeaddrinfo(res);
        timeval tv{};
        tv.tv_sec = 30;
        ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    }

    void send_all(const Bytes& data) {
        std::size_t sent = 0;
        while (sent < data.size()) {
            ssize_t w = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
            if (w <= 0) {
                throw ConnectionFailed("write to " + endpoint() + " failed: " +
                                       std::string(std::strerror(errno)));
            }
            sent += static_cast<std::size_t>(w);
        }
    }

    UpstreamDsn dsn_;
    int fd_ = -1;
    FrameDecoder decoder_;
};

std::string error_message_field(const Bytes& payload) {
    // ErrorResponse payload: (field-type byte, cstring)* terminated by 0.
    std::size_t i = 0;
    std::string message = "unknown error";
    while (i < payload.size() && payload[i] != 0) {
        char field = static_cast<char>(payload[i++]);
        std::string value;
        while (i < payload.size() && payload[i] != 0) value.push_back(static_cast<char>(payload[i++]));
        if (i < payload.size()) ++i;  // closing NUL
        if (field == 'M') message = value;
    }
    return message;
}

void wait_ready(Connection& conn) {
    while (true) {
        WireMessage msg = conn.next_message();
        switch (msg.tag) {
            case 'R': {
                PayloadReader reader(msg.payload);
                auto code = reader.read_u32();
                if (!code) throw UpstreamError("malformed authentication response");
                if (*code == 0) break;  // AuthenticationOk
                if (*code == 3) {
                    conn.send_password();
                    break;
                }
                throw UpstreamError("unsupported authentication method (code " +
                                    std::to_string(*code) + ")");
            }
            case 'S':  // ParameterStatus
            case 'K':  // BackendKeyData
            case 'N':  // NoticeResponse
                break;
            case 'E': throw UpstreamError(error_message_field(msg.payload));
            case 'Z': return;  // ReadyForQuery
            default: break;    // tolerate anything else during startup
        }
    }
}

}  // namespace

UpstreamDsn parse_dsn(const std::string& text) {
    UpstreamDsn dsn;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw ConnectionFailed("malformed DSN token \"" + token + "\" (expected key=value)");
        }
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        if (key == "host") dsn.host = value;
        else if (key == "port") {
            std::uint16_t port = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), port);
            if (ec != std::errc() || ptr != value.data() + value.size()) {
                throw ConnectionFailed("invalid port \"" + value + "\" in DSN");
            }
            dsn.port = port;
        } else if (key == "dbname" || key == "database") dsn.database = value;
        else if (key == "user") dsn.user = value;
        else if (key == "password") dsn.password = value;
        // Unknown keys (sslmode, connect_timeout, ...) are ignored.
    }
    return dsn;
}

GeometryTable mirror_upstream(const std::string& table_name, const UpstreamDsn& dsn,
                              const std::string& source_table, const std::string& id_column,
                              const std::string& geom_column) {
    Connection conn(dsn);
    conn.send_startup();
    wait_ready(conn);

    conn.send_query("SELECT " + id_column + ", " + geom_column + " FROM " + source_table);

    // Rows are re-serialized as CSV text and pushed through the CSV loader,
    // so mirrored tables get identical validation (ids, WKT, duplicates).
    std::string csv;
    bool done = false;
    while (!done) {
        WireMessage msg = conn.next_message();
        switch (msg.tag) {
            case 'T':  // RowDescription; column count was fixed by our query
                break;
            case 'D': {
                PayloadReader reader(msg.payload);
                auto count = reader.read_u16();
                if (!count || *count != 2) throw UpstreamError("expected 2 columns per row");
                auto id_cell = reader.read_len_string();
                auto wkt_cell = reader.read_len_string();
                if (!id_cell || !wkt_cell) throw UpstreamError("malformed DataRow");
                if (!*id_cell || !*wkt_cell) throw UpstreamError("NULL in mirrored row");
                csv += **id_cell;
                csv += ",\"";
                for (char c : **wkt_cell) {
                    csv += c;
                    if (c == '"') csv += '"';
                }
                csv += "\"\n";
                break;
            }
            case 'C': break;  // CommandComplete
            case 'N': break;
            case 'E': throw UpstreamError(error_message_field(msg.payload));
            case 'Z': done = true; break;
            default: break;
        }
    }
    conn.send_terminate();

    return load_csv_text(table_name, csv, geom_column);
}

}  // namespace tindb::store
