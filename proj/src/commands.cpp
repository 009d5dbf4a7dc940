#include "oscnet/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace oscnet {

namespace {

SolutionTrace raw_reference(const RunConfig& config) {
    const auto& prob = config.training.problem;
    const auto& ref = config.reference;
    if (ref.method == "dopri45") {
        return integrate_dopri45(prob, ref.rtol, ref.atol, prob.t_end);
    }
    const int n_steps =
        static_cast<int>(std::ceil((prob.t_end - prob.t0) / ref.h - 1e-12));
    if (ref.method == "rk4") return integrate_rk4(prob, ref.h, n_steps);
    return integrate_ab4(prob, ref.h, std::max(n_steps, 4));
}

std::vector<double> output_grid(const RunConfig& config) {
    return collocation_points(config.output.n_grid, config.training.problem.t0,
                              config.training.problem.t_end, SamplingMode::Equispaced, 0);
}

void write_loss_plot(const TrainRecord& record, const std::filesystem::path& path) {
    PlotSeries train_series{"train loss", {}, {}};
    for (const auto& [epoch, loss] : record.train_loss_history) {
        train_series.x.push_back(epoch);
        train_series.y.push_back(loss);
    }
    PlotSeries valid_series{"validation loss", {}, {}};
    for (const auto& [epoch, loss] : record.valid_loss_history) {
        valid_series.x.push_back(epoch);
        valid_series.y.push_back(loss);
    }
    write_line_plot_svg({train_series, valid_series}, "loss history (log scale)", true, path);
}

std::filesystem::path train_one(const RunConfig& config, const std::filesystem::path& dir,
                                TrainRecord* record_out) {
    TrainRecord record = train(config.training);
    write_run_dir(record, config.training, dir);

    const SolutionTrace dnn = evaluate_on_grid(record.final_params, config.training.problem,
                                               config.training.transform, config.output.n_grid);
    write_trace_csv(dnn, dir / "solution.csv");

    const SolutionTrace ref = reference_on_grid(config);
    const ComparisonReport report = compare(dnn, ref);
    write_comparison_csv(report, dir / "comparison.csv");

    write_line_plot_svg({{"network", dnn.times, dnn.values},
                         {"reference (" + config.reference.method + ")", ref.times, ref.values}},
                        "solution overlay", false, dir / "solution.svg");
    write_line_plot_svg({{"network - reference", report.grid, report.errors}}, "signed error",
                        false, dir / "comparison.svg");
    write_loss_plot(record, dir / "loss.svg");

    if (record_out != nullptr) *record_out = std::move(record);
    return dir;
}

}  // namespace

SolutionTrace reference_on_grid(const RunConfig& config) {
    return resample_hermite(raw_reference(config), output_grid(config));
}

std::filesystem::path run_train(const RunConfig& config) {
    const std::filesystem::path dir(config.output.directory);
    std::filesystem::create_directories(dir);
    return train_one(config, dir, nullptr);
}

std::filesystem::path run_integrate(const RunConfig& config) {
    const std::filesystem::path dir(config.output.directory);
    std::filesystem::create_directories(dir);
    SolutionTrace trace = raw_reference(config);
    if (config.reference.method == "dopri45") {
        trace = resample_hermite(trace, output_grid(config));
    }
    const auto path = dir / "trace.csv";
    write_trace_csv(trace, path);
    return path;
}

std::vector<BenchRow> bench_rows(const RunConfig& config) {
    static const ActivationKind kOrder[] = {ActivationKind::Tanh, ActivationKind::Mish,
                                            ActivationKind::Sine, ActivationKind::Gcu,
                                            ActivationKind::Asu};
    const std::filesystem::path dir(config.output.directory);
    std::vector<BenchRow> rows;
    for (ActivationKind kind : kOrder) {
        RunConfig run = config;
        run.training.activation = kind;
        BenchRow row;
        row.activation = to_string(kind);
        try {
            TrainRecord record;
            train_one(run, dir / row.activation, &record);
            ComparisonReport report =
                compare(evaluate_on_grid(record.final_params, run.training.problem,
                                         run.training.transform, run.output.n_grid),
                        reference_on_grid(run));
            if (record.converged) row.epochs_to_threshold = record.epochs_run;
            row.wall_time_seconds = record.wall_time_seconds;
            row.final_train_loss = record.train_loss_history.back().second;
            row.max_abs_error_vs_ref = report.max_abs_error;
        } catch (const std::exception&) {
            row.epochs_to_threshold = std::nullopt;
            row.wall_time_seconds = std::numeric_limits<double>::quiet_NaN();
            row.final_train_loss = std::numeric_limits<double>::quiet_NaN();
            row.max_abs_error_vs_ref = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const BenchRow& lhs, const BenchRow& rhs) {
        const int le = lhs.epochs_to_threshold.value_or(std::numeric_limits<int>::max());
        const int re = rhs.epochs_to_threshold.value_or(std::numeric_limits<int>::max());
        if (le != re) return le < re;
        return lhs.activation < rhs.activation;
    });
    return rows;
}

std::filesystem::path run_bench(const RunConfig& config) {
    const std::filesystem::path dir(config.output.directory);
    std::filesystem::create_directories(dir);
    const std::vector<BenchRow> rows = bench_rows(config);

    const auto csv_path = dir / "bench.csv";
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path.string());
    out << "activation,epochs_to_threshold,wall_time_seconds,final_train_loss,"
           "max_abs_error_vs_ref\n";
    char buf[32];
    for (const auto& row : rows) {
        out << row.activation << ',';
        if (row.epochs_to_threshold) {
            out << *row.epochs_to_threshold;
        } else {
            out << "not reached";
        }
        std::snprintf(buf, sizeof(buf), "%.17g", row.wall_time_seconds);
        out << ',' << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", row.final_train_loss);
        out << ',' << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", row.max_abs_error_vs_ref);
        out << ',' << buf << '\n';
    }

    std::vector<std::string> labels;
    std::vector<double> times;
    for (const auto& row : rows) {
        labels.push_back(row.activation);
        times.push_back(row.wall_time_seconds);
    }
    write_bar_plot_svg(labels, times, "training wall time (s)", dir / "walltime.svg");
    return csv_path;
}

}  // namespace oscnet
