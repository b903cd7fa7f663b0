#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tindb/engine.hpp"

namespace tindb::wire {

using Bytes = std::vector<std::uint8_t>;

// Well-known startup-phase request codes (they arrive in untagged frames).
inline constexpr std::uint32_t kProtocolV3 = 196608;       // 3.0
inline constexpr std::uint32_t kSslRequestCode = 80877103;
inline constexpr std::uint32_t kGssEncRequestCode = 80877104;
inline constexpr std::uint32_t kCancelRequestCode = 80877102;

// One decoded client message. Startup-phase frames have no tag byte; their
// payload begins with the 4-byte request code.
struct WireMessage {
    bool startup = false;
    char tag = 0;       // meaningful when !startup
    Bytes payload;      // excludes tag and length
};

// Incremental frame decoder tolerant of arbitrary read boundaries: bytes go
// in via feed(); frames come out one at a time via next(). The decoder
// starts in startup mode (untagged frames); the session switches it to
// tagged framing between next() calls, after it has seen the
// StartupMessage. One frame at a time matters: pipelined bytes following a
// startup frame must not be parsed under the wrong framing rules.
class FrameDecoder {
  public:
    // Appends raw bytes. Returns false once the stream is irrecoverably
    // malformed (the connection should close).
    bool feed(const std::uint8_t* data, std::size_t size);

    // Extracts the next complete frame, or nullopt when more bytes are
    // needed. Sets the error state on malformed length fields.
    std::optional<WireMessage> next();

    // Leaves startup mode; call once the StartupMessage has been handled.
    void enter_normal_mode() { startup_mode_ = false; }

    bool in_startup_mode() const { return startup_mode_; }

    bool failed() const { return !error_.empty(); }
    const std::string& error() const { return error_; }

    std::size_t buffered_bytes() const { return buffer_.size(); }

  private:
    Bytes buffer_;
    bool startup_mode_ = true;
    std::string error_;
};

// --- big-endian primitives ---

void put_u32(Bytes& out, std::uint32_t v);
void put_u16(Bytes& out, std::uint16_t v);
std::uint32_t get_u32(const std::uint8_t* p);
std::uint16_t get_u16(const std::uint8_t* p);

// Reads successive fields out of a message payload.
class PayloadReader {
  public:
    PayloadReader(const Bytes& payload) : data_(payload.data()), size_(payload.size()) {}

    std::optional<std::uint32_t> read_u32();
    std::optional<std::uint16_t> read_u16();
    std::optional<std::string> read_cstring();
    // Length-prefixed byte string where -1 encodes null (Bind parameters).
    std::optional<std::optional<std::string>> read_len_string();
    bool at_end() const { return offset_ == size_; }
    std::size_t remaining() const { return size_ - offset_; }

  private:
    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t offset_ = 0;
};

// --- server message builders (each returns one complete tagged frame) ---

Bytes build_message(char tag, const Bytes& payload);
Bytes authentication_ok();
Bytes authentication_cleartext_password();
Bytes parameter_status(const std::string& key, const std::string& value);
Bytes backend_key_data(std::uint32_t pid, std::uint32_t secret);
Bytes ready_for_query(char txn_state = 'I');
Bytes row_description(const std::vector<sqlfe::ColumnDesc>& columns);
Bytes data_row(const std::vector<std::string>& cells);
Bytes command_complete(const std::string& tag);
Bytes empty_query_response();
Bytes parse_complete();
Bytes bind_complete();
Bytes close_complete();
Bytes no_data();
Bytes error_response(const std::string& severity, const std::string& sqlstate,
                     const std::string& message, std::size_t position = 0);
Bytes notice_response(const std::string& message);

void append(Bytes& out, const Bytes& more);

}  // namespace tindb::wire
