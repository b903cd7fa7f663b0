#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tindb/bench.hpp"
#include "tindb/dataset.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tindb-bench: dataset generator and timing harness"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "write drills.csv and ore.wkt");
    std::uint64_t seed = 42;
    std::size_t segments = 1000;
    std::size_t faces = 500;
    std::string out_dir = ".";
    std::string style = "vertical";
    generate->add_option("--seed", seed, "RNG seed");
    generate->add_option("--segments", segments, "number of drill segments")->check(CLI::PositiveNumber);
    generate->add_option("--faces", faces, "ore mesh face target")->check(CLI::PositiveNumber);
    generate->add_option("--out-dir", out_dir, "output directory");
    generate->add_option("--style", style, "drill style: vertical or uniform")
        ->check(CLI::IsMember({"vertical", "uniform"}));

    // run
    auto* run = app.add_subcommand("run", "time an operator over the generated dataset");
    std::string op_name;
    std::string data_dir = ".";
    std::vector<long long> limits{1, 10, 1000};
    std::vector<std::string> backends{"sequential", "parallel"};
    std::vector<int> worker_counts;
    int repeats = 5;
    double timeout = 0.0;
    std::string report_path = "report.csv";
    run->add_option("--op", op_name, "volume, distance or intersects")
        ->required()
        ->check(CLI::IsMember({"volume", "distance", "intersects"}));
    run->add_option("--data-dir", data_dir, "directory with drills.csv and ore.wkt");
    run->add_option("--limits", limits, "LIMIT values")->delimiter(',');
    run->add_option("--backends", backends, "sequential and/or parallel")->delimiter(',');
    run->add_option("--workers", worker_counts, "worker counts for the parallel backend")
        ->delimiter(',');
    run->add_option("--repeats", repeats, "runs per cell (minimum 5)");
    run->add_option("--timeout", timeout, "per-cell timeout in seconds (0 = none)");
    run->add_option("--out", report_path, "report CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            tindb::bench::DatasetSpec spec;
            spec.seed = seed;
            spec.segment_count = segments;
            spec.mesh_face_target = faces;
            spec.drill_style = style == "uniform" ? tindb::bench::DrillStyle::UniformRandom
                                                  : tindb::bench::DrillStyle::VerticalJittered;
            tindb::bench::generate_dataset(spec, out_dir);
            std::printf("wrote %s/drills.csv (%zu segments) and %s/ore.wkt (%zu faces)\n",
                        out_dir.c_str(), segments, out_dir.c_str(),
                        tindb::bench::sphere_face_count(faces));
            return 0;
        }

        tindb::bench::RunOptions options;
        options.data_dir = data_dir;
        options.limits.assign(limits.begin(), limits.end());
        options.repeats = repeats;
        options.cell_timeout_seconds = timeout;
        if (worker_counts.empty()) {
            worker_counts.push_back(
                static_cast<int>(tindb::kernels::ExecutorConfig::default_worker_count()));
        }
        for (const auto& backend : backends) {
            if (backend == "sequential") {
                options.cells.push_back({tindb::kernels::Backend::Sequential, 1});
            } else if (backend == "parallel") {
                for (int w : worker_counts) {
                    options.cells.push_back({tindb::kernels::Backend::Parallel, w});
                }
            } else {
                std::fprintf(stderr, "tindb-bench: unknown backend \"%s\"\n", backend.c_str());
                return 1;
            }
        }

        auto reports =
            tindb::bench::run_benchmark(tindb::bench::bench_op_from_string(op_name), options);
        tindb::bench::write_report_csv(report_path, tindb::bench::to_report_rows(reports));
        std::printf("%s", tindb::bench::human_readable_table(reports).c_str());
        std::printf("report written to %s\n", report_path.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "tindb-bench: %s\n", e.what());
        return 1;
    }
}
