#include "tindb/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tindb/engine.hpp"
#include "tindb/store.hpp"
#include "tindb/wkt.hpp"

namespace tindb::bench {

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string strip_trailing_whitespace(std::string text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
        text.pop_back();
    }
    return text;
}

// Fresh catalog per cell: the engine "restart" that keeps caches uniform.
void load_dataset(const std::string& data_dir, store::Catalog& catalog) {
    catalog.register_table(store::load_csv("drills", data_dir + "/drills.csv"));
    catalog.register_table(store::load_wkt_file("ore", data_dir + "/ore.wkt"));
}

std::string sql_for(BenchOp op, const std::string& ore_wkt, std::int64_t limit) {
    std::string limit_clause = " LIMIT " + std::to_string(limit);
    switch (op) {
        case BenchOp::Volume: return "SELECT ST_Volume(geom) FROM ore" + limit_clause;
        case BenchOp::Distance:
            return "SELECT id, ST_3DDistance(geom, ST_GeomFromText('" + ore_wkt +
                   "')) FROM drills" + limit_clause;
        case BenchOp::Intersects:
            return "SELECT id FROM drills WHERE ST_3DIntersects(geom, ST_GeomFromText('" +
                   ore_wkt + "'))" + limit_clause;
    }
    throw std::logic_error("unreachable");
}

double sample_stddev(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += (x - mean) * (x - mean);
    return std::sqrt(sum / static_cast<double>(xs.size() - 1));
}

}  // namespace

const char* bench_op_name(BenchOp op) {
    switch (op) {
        case BenchOp::Volume: return "volume";
        case BenchOp::Distance: return "distance";
        case BenchOp::Intersects: return "intersects";
    }
    return "?";
}

BenchOp bench_op_from_string(const std::string& name) {
    if (name == "volume") return BenchOp::Volume;
    if (name == "distance") return BenchOp::Distance;
    if (name == "intersects") return BenchOp::Intersects;
    throw std::runtime_error("unknown op \"" + name + "\" (expected volume, distance or intersects)");
}

std::vector<TimingReport> run_benchmark(BenchOp op, const RunOptions& options) {
    using clock = std::chrono::steady_clock;

    const int repeats = std::max(options.repeats, 5);
    const std::string ore_wkt =
        strip_trailing_whitespace(read_text_file(options.data_dir + "/ore.wkt"));

    std::vector<TimingReport> reports;
    for (std::int64_t limit : options.limits) {
        const std::string sql = sql_for(op, ore_wkt, limit);
        for (const CellConfig& cell : options.cells) {
            kernels::ExecutorConfig exec;
            exec.backend = cell.backend;
            exec.worker_count = cell.workers;

            TimingReport report;
            report.op = bench_op_name(op);
            report.limit = limit;
            report.backend =
                cell.backend == kernels::Backend::Parallel ? "parallel" : "sequential";
            report.workers = cell.workers;

            auto cell_start = clock::now();
            for (int run = 0; run < repeats; ++run) {
                store::Catalog catalog;
                load_dataset(options.data_dir, catalog);

                auto t0 = clock::now();
                sqlfe::QueryResult result = sqlfe::execute_sql(sql, catalog, exec);
                auto t1 = clock::now();
                if (!result.is_row_returning) throw std::runtime_error("benchmark query returned no rows");
                report.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());

                if (options.cell_timeout_seconds > 0.0) {
                    double elapsed = std::chrono::duration<double>(clock::now() - cell_start).count();
                    if (elapsed > options.cell_timeout_seconds) {
                        throw std::runtime_error("benchmark cell exceeded " +
                                                 std::to_string(options.cell_timeout_seconds) +
                                                 " s timeout");
                    }
                }
            }
            double sum = 0.0;
            for (double s : report.seconds) sum += s;
            report.mean = sum / static_cast<double>(report.seconds.size());
            report.stddev = sample_stddev(report.seconds, report.mean);
            reports.push_back(std::move(report));
        }
    }
    return reports;
}

std::vector<ReportRow> to_report_rows(const std::vector<TimingReport>& reports) {
    std::vector<ReportRow> rows;
    for (const auto& report : reports) {
        for (std::size_t i = 0; i < report.seconds.size(); ++i) {
            rows.push_back({report.op, report.limit, report.backend, report.workers,
                            static_cast<int>(i), report.seconds[i]});
        }
    }
    return rows;
}

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
    out << "op,limit,backend,workers,run_index,seconds\n";
    for (const auto& row : rows) {
        out << row.op << ',' << row.limit << ',' << row.backend << ',' << row.workers << ','
            << row.run_index << ',' << format_double(row.seconds) << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write to \"" + path + "\" failed");
}

std::vector<ReportRow> read_report_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
    std::string line;
    if (!std::getline(in, line) || strip_trailing_whitespace(line) != "op,limit,backend,workers,run_index,seconds") {
        throw std::runtime_error("\"" + path + "\" is not a benchmark report");
    }
    std::vector<ReportRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_trailing_whitespace(line);
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string op, limit, backend, workers, run_index, seconds;
        if (!std::getline(fields, op, ',') || !std::getline(fields, limit, ',') ||
            !std::getline(fields, backend, ',') || !std::getline(fields, workers, ',') ||
            !std::getline(fields, run_index, ',') || !std::getline(fields, seconds)) {
            throw std::runtime_error("report line " + std::to_string(line_no) + " is malformed");
        }
        try {
            rows.push_back({op, std::stoll(limit), backend, std::stoi(workers), std::stoi(run_index),
                            std::stod(seconds)});
        } catch (const std::exception&) {
            throw std::runtime_error("report line " + std::to_string(line_no) + " is malformed");
        }
    }
    return rows;
}

std::string human_readable_table(const std::vector<TimingReport>& reports) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %10s %-11s %8s %6s %12s %12s\n", "op", "limit",
                  "backend", "workers", "runs", "mean (s)", "stddev (s)");
    out += line;
    out += std::string(76, '-') + "\n";
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line), "%-12s %10lld %-11s %8d %6zu %12.6f %12.6f\n",
                      r.op.c_str(), static_cast<long long>(r.limit), r.backend.c_str(), r.workers,
                      r.seconds.size(), r.mean, r.stddev);
        out += line;
    }
    return out;
}

}  // namespace tindb::bench
