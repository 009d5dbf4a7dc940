#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "oscnet/integrators.hpp"

namespace oscnet {

// Pointwise signed difference between a network solution and a reference
// trace on a shared grid, with absolute-error summaries.
struct ComparisonReport {
    std::vector<double> grid;
    std::vector<double> dnn_values;
    std::vector<double> ref_values;
    std::vector<double> errors;  // dnn - ref, signed
    double max_abs_error = 0.0;
    double mean_abs_error = 0.0;
    double rms_error = 0.0;
};

// Requires identical time grids; resample the reference first if needed.
ComparisonReport compare(const SolutionTrace& dnn, const SolutionTrace& ref);

// comparison.csv columns: t,u_dnn,u_ref,error.
void write_comparison_csv(const ComparisonReport& report, const std::filesystem::path& path);

// Standalone SVG line plot of one or more (x, y) series. Deterministic for
// identical inputs.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

void write_line_plot_svg(const std::vector<PlotSeries>& series, const std::string& title,
                         bool log_y, const std::filesystem::path& path);

// Bar chart (one bar per label), used for the wall-time benchmark figure.
void write_bar_plot_svg(const std::vector<std::string>& labels,
                        const std::vector<double>& heights, const std::string& title,
                        const std::filesystem::path& path);

}  // namespace oscnet
