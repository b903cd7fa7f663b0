#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tindb/dataset.hpp"
#include "tindb/executor.hpp"

namespace tindb::bench {

enum class BenchOp { Volume, Distance, Intersects };

const char* bench_op_name(BenchOp op);          // "volume" | "distance" | "intersects"
BenchOp bench_op_from_string(const std::string& name);

struct CellConfig {
    kernels::Backend backend = kernels::Backend::Sequential;
    int workers = 1;
};

// Aggregated timings for one (op, limit, backend, workers) cell.
struct TimingReport {
    std::string op;
    std::int64_t limit = 0;
    std::string backend;
    int workers = 1;
    std::vector<double> seconds;  // one entry per run
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
};

struct RunOptions {
    std::string data_dir;                 // directory with drills.csv + ore.wkt
    std::vector<std::int64_t> limits;     // result counts requested via LIMIT
    std::vector<CellConfig> cells;        // backend/worker matrix
    int repeats = 5;                      // raised to 5 when lower
    double cell_timeout_seconds = 0.0;    // 0 disables the timeout
};

// Runs the SQL statement for `op` against a freshly loaded engine for each
// cell (restart-per-cell keeps caches uniform), `repeats` times per cell.
// Throws std::runtime_error when the dataset cannot be loaded or a cell
// exceeds the timeout.
std::vector<TimingReport> run_benchmark(BenchOp op, const RunOptions& options);

// One line of the machine-readable report.
struct ReportRow {
    std::string op;
    std::int64_t limit = 0;
    std::string backend;
    int workers = 1;
    int run_index = 0;
    double seconds = 0.0;
};

std::vector<ReportRow> to_report_rows(const std::vector<TimingReport>& reports);

// CSV with header `op,limit,backend,workers,run_index,seconds`.
void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows);
std::vector<ReportRow> read_report_csv(const std::string& path);

// Fixed-width human-readable summary table.
std::string human_readable_table(const std::vector<TimingReport>& reports);

}  // namespace tindb::bench
