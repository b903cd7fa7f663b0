#include "tindb/pg_protocol.hpp"

#include <cstring>

namespace tindb::wire {

namespace {

// Framing sanity bounds: a startup packet is small; regular messages are
// capped generously (a 5M-row simple query still arrives as one Q frame).
constexpr std::uint32_t kMaxStartupLength = 64 * 1024;
constexpr std::uint32_t kMaxMessageLength = 512u * 1024u * 1024u;

}  // namespace

void put_u32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
           (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

bool FrameDecoder::feed(const std::uint8_t* data, std::size_t size) {
    if (failed()) return false;
    buffer_.insert(buffer_.end(), data, data + size);
    return true;
}

std::optional<WireMessage> FrameDecoder::next() {
    if (failed()) return std::nullopt;

    if (startup_mode_) {
        if (buffer_.size() < 4) return std::nullopt;
        const std::uint32_t length = get_u32(buffer_.data());
        if (length < 8 || length > kMaxStartupLength) {
            error_ = "invalid startup packet length";
            return std::nullopt;
        }
        if (buffer_.size() < length) return std::nullopt;
        WireMessage msg;
        msg.startup = true;
        msg.payload.assign(buffer_.begin() + 4, buffer_.begin() + length);
        buffer_.erase(buffer_.begin(), buffer_.begin() + length);
        return msg;
    }

    if (buffer_.size() < 5) return std::nullopt;
    const char tag = static_cast<char>(buffer_[0]);
    const std::uint32_t length = get_u32(buffer_.data() + 1);
    if (length < 4 || length > kMaxMessageLength) {
        error_ = "invalid message length";
        return std::nullopt;
    }
    const std::size_t total = 1 + static_cast<std::size_t>(length);
    if (buffer_.size() < total) return std::nullopt;
    WireMessage msg;
    msg.tag = tag;
    msg.payload.assign(buffer_.begin() + 5, buffer_.begin() + total);
    buffer_.erase(buffer_.begin(), buffer_.begin() + total);
    return msg;
}

std::optional<std::uint32_t> PayloadReader::read_u32() {
    if (size_ - offset_ < 4) return std::nullopt;
    const std::uint32_t v = get_u32(data_ + offset_);
    offset_ += 4;
    return v;
}

std::optional<std::uint16_t> PayloadReader::read_u16() {
    if (size_ - offset_ < 2) return std::nullopt;
    const std::uint16_t v = get_u16(data_ + offset_);
    offset_ += 2;
    return v;
}

std::optional<std::string> PayloadReader::read_cstring() {
    const void* nul = std::memchr(data_ + offset_, 0, size_ - offset_);
    if (nul == nullptr) return std::nullopt;
    const auto* end = static_cast<const std::uint8_t*>(nul);
    std::string s(reinterpret_cast<const char*>(data_ + offset_),
                  static_cast<std::size_t>(end - (data_ + offset_)));
    offset_ = static_cast<std::size_t>(end - data_) + 1;
    return s;
}

std::optional<std::optional<std::string>> PayloadReader::read_len_string() {
    auto len = read_u32();
    if (!len) return std::nullopt;
    if (*len == 0xFFFFFFFFu) return std::optional<std::string>{};  // SQL null
    if (size_ - offset_ < *len) return std::nullopt;
    std::string s(reinterpret_cast<const char*>(data_ + offset_), *len);
    offset_ += *len;
    return std::optional<std::string>{std::move(s)};
}

Bytes build_message(char tag, const Bytes& payload) {
    Bytes out;
    out.reserve(5 + payload.size());
    out.push_back(static_cast<std::uint8_t>(tag));
    put_u32(out, static_cast<std::uint32_t>(4 + payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Bytes authentication_ok() {
    Bytes payload;
    put_u32(payload, 0);
    return build_message('R', payload);
}

Bytes authentication_cleartext_password() {
    Bytes payload;
    put_u32(payload, 3);
    return build_message('R', payload);
}

Bytes parameter_status(const std::string& key, const std::string& value) {
    Bytes payload;
    payload.insert(payload.end(), key.begin(), key.end());
    payload.push_back(0);
    payload.insert(payload.end(), value.begin(), value.end());
    payload.push_back(0);
    return build_message('S', payload);
}

Bytes backend_key_data(std::uint32_t pid, std::uint32_t secret) {
    Bytes payload;
    put_u32(payload, pid);
    put_u32(payload, secret);
    return build_message('K', payload);
}

Bytes ready_for_query(char txn_state) {
    Bytes payload;
    payload.push_back(static_cast<std::uint8_t>(txn_state));
    return build_message('Z', payload);
}

Bytes row_description(const std::vector<sqlfe::ColumnDesc>& columns) {
    Bytes payload;
    put_u16(payload, static_cast<std::uint16_t>(columns.size()));
    for (const auto& col : columns) {
        payload.insert(payload.end(), col.name.begin(), col.name.end());
        payload.push_back(0);
        put_u32(payload, 0);                       // table oid (none)
        put_u16(payload, 0);                       // attribute number (none)
        put_u32(payload, col.type_oid);
        put_u16(payload, 0xFFFF);                  // typlen -1 (variable)
        put_u32(payload, 0xFFFFFFFFu);             // atttypmod -1
        put_u16(payload, 0);                       // text format
    }
    return build_message('T', payload);
}

Bytes data_row(const std::vector<std::string>& cells) {
    Bytes payload;
    put_u16(payload, static_cast<std::uint16_t>(cells.size()));
    for (const auto& cell : cells) {
        put_u32(payload, static_cast<std::uint32_t>(cell.size()));
        payload.insert(payload.end(), cell.begin(), cell.end());
    }
    return build_message('D', payload);
}

Bytes command_complete(const std::string& tag) {
    Bytes payload;
    payload.insert(payload.end(), tag.begin(), tag.end());
    payload.push_back(0);
    return build_message('C', payload);
}

Bytes empty_query_response() { return build_message('I', {}); }
Bytes parse_complete() { return build_message('1', {}); }
Bytes bind_complete() { return build_message('2', {}); }
Bytes close_complete() { return build_message('3', {}); }
Bytes no_data() { return build_message('n', {}); }

namespace {

void put_field(Bytes& payload, char code, const std::string& value) {
    payload.push_back(static_cast<std::uint8_t>(code));
    payload.insert(payload.end(), value.begin(), value.end());
    payload.push_back(0);
}

}  // namespace

Bytes error_response(const std::string& severity, const std::string& sqlstate,
                     const std::string& message, std::size_t position) {
    Bytes payload;
    put_field(payload, 'S', severity);
    put_field(payload, 'V', severity);
    put_field(payload, 'C', sqlstate);
    put_field(payload, 'M', message);
    if (position > 0) put_field(payload, 'P', std::to_string(position));
    payload.push_back(0);
    return build_message('E', payload);
}

Bytes notice_response(const std::string& message) {
    Bytes payload;
    put_field(payload, 'S', "NOTICE");
    put_field(payload, 'V', "NOTICE");
    put_field(payload, 'C', "00000");
    put_field(payload, 'M', message);
    payload.push_back(0);
    return build_message('N', payload);
}

void append(Bytes& out, const Bytes& more) { out.insert(out.end(), more.begin(), more.end()); }

}  // namespace tindb::wire
