#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oscnet/config.hpp"
#include "oscnet/report.hpp"

namespace oscnet {

// One benchmark result line (Table 2 analog).
struct BenchRow {
    std::string activation;
    std::optional<int> epochs_to_threshold;  // nullopt = not reached
    double wall_time_seconds = 0.0;
    double final_train_loss = 0.0;
    double max_abs_error_vs_ref = 0.0;
};

// Reference trace resampled onto an equispaced n_grid grid over the
// problem's time domain.
SolutionTrace reference_on_grid(const RunConfig& config);

// Trains one network and writes history.csv, checkpoint, meta, solution.csv
// and comparison.csv (plus SVG plots) into the output directory. Returns
// that directory.
std::filesystem::path run_train(const RunConfig& config);

// Reference-integrator-only run; writes trace.csv and returns its path.
std::filesystem::path run_integrate(const RunConfig& config);

// Trains all five activations with identical seed/hyperparameters/problem;
// writes bench.csv (rows sorted by epochs_to_threshold ascending) and a
// wall-time bar plot. A failed run yields a "not reached"/NaN row instead of
// aborting the others. Returns the bench.csv path.
std::filesystem::path run_bench(const RunConfig& config);

// The rows run_bench writes, for callers that want them in memory.
std::vector<BenchRow> bench_rows(const RunConfig& config);

}  // namespace oscnet
