#include "tindb/store.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "tindb/wkt.hpp"

namespace tindb::store {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Splits one CSV line at the first unquoted comma and unquotes the second
// field if needed. Returns false for a malformed quoted field.
bool split_record(const std::string& line, std::string& id_field, std::string& wkt_field) {
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) return false;
    id_field = strip(line.substr(0, comma));

    std::string rest = strip(line.substr(comma + 1));
    if (!rest.empty() && rest.front() == '"') {
        std::string out;
        out.reserve(rest.size());
        std::size_t i = 1;
        for (;; ++i) {
            if (i >= rest.size()) return false;  // unterminated quote
            if (rest[i] == '"') {
                if (i + 1 < rest.size() && rest[i + 1] == '"') {
                    out.push_back('"');
                    ++i;
                    continue;
                }
                break;
            }
            out.push_back(rest[i]);
        }
        if (strip(rest.substr(i + 1)).empty() == false) return false;  // junk after quote
        wkt_field = std::move(out);
    } else {
        wkt_field = rest;
    }
    return true;
}

bool is_header(const std::string& id_field, const std::string& wkt_field,
               const std::string& geom_column) {
    const std::string lid = lower(id_field);
    const std::string lgeom = lower(strip(wkt_field));
    return lid == "id" && (lgeom == "geometry" || lgeom == "wkt" || lgeom == lower(geom_column));
}

}  // namespace

GeometryTable load_csv_text(const std::string& table_name, const std::string& text,
                            const std::string& geom_column) {
    GeometryTable table;
    table.name = table_name;
    table.geom_column = geom_column;
    table.load_state = LoadState::Loading;

    std::unordered_set<std::int64_t> seen;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool first_content_line = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (strip(line).empty()) continue;

        std::string id_field, wkt_field;
        if (!split_record(line, id_field, wkt_field)) {
            throw CsvError("malformed record (expected `id,WKT`)", line_no);
        }
        if (first_content_line) {
            first_content_line = false;
            if (is_header(id_field, wkt_field, geom_column)) continue;
        }

        std::int64_t id = 0;
        const char* b = id_field.data();
        const char* e = b + id_field.size();
        auto [p, ec] = std::from_chars(b, e, id);
        if (ec != std::errc() || p != e) {
            throw CsvError("invalid id \"" + id_field + "\"", line_no);
        }
        if (!seen.insert(id).second) throw DuplicateId(id, line_no);

        try {
            table.records.push_back(GeometryRecord{id, parse_wkt(wkt_field)});
        } catch (const WktParseError& ex) {
            throw CsvError(std::string("WKT parse failure: ") + ex.what(), line_no);
        }
    }

    table.load_state = LoadState::Ready;
    return table;
}

GeometryTable load_csv(const std::string& table_name, const std::string& path,
                       const std::string& geom_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw StoreError("I/O failure reading \"" + path + "\"");
    return load_csv_text(table_name, buf.str(), geom_column);
}

GeometryTable load_wkt_file(const std::string& table_name, const std::string& path,
                            const std::string& geom_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw StoreError("I/O failure reading \"" + path + "\"");
    std::string text = buf.str();
    const char* ws = " \t\r\n";
    const std::size_t first = text.find_first_not_of(ws);
    const std::size_t last = text.find_last_not_of(ws);
    if (first == std::string::npos) throw StoreError("\"" + path + "\" is empty");
    text = text.substr(first, last - first + 1);

    GeometryTable table;
    table.name = table_name;
    table.geom_column = geom_column;
    try {
        table.records.push_back({1, parse_wkt(text)});
    } catch (const WktParseError& e) {
        throw StoreError("invalid WKT in \"" + path + "\": " + e.what());
    }
    table.load_state = LoadState::Ready;
    return table;
}

void Catalog::register_table(GeometryTable table) {
    auto snapshot = std::make_shared<const GeometryTable>(std::move(table));
    std::unique_lock lock(mutex_);
    tables_[snapshot->name] = std::move(snapshot);
}

TableSnapshot Catalog::scan(const std::string& name) const {
    std::shared_lock lock(mutex_);
    auto it = tables_.find(name);
    if (it == tables_.end()) throw UnknownTable(name);
    if (it->second->load_state != LoadState::Ready) throw TableNotReady(name);
    return it->second;
}

bool Catalog::has_table(const std::string& name) const {
    std::shared_lock lock(mutex_);
    return tables_.count(name) != 0;
}

std::vector<std::string> Catalog::table_names() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> names;
    names.reserve(tables_.size());
    for (const auto& [name, _] : tables_) names.push_back(name);
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace tindb::store
