#include "oscnet/training.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace oscnet {

AdamState make_adam_state(const MlpParams& params, const AdamHyper& hyper) {
    AdamState state;
    state.m = zeros_like(params);
    state.v = zeros_like(params);
    state.hyper = hyper;
    return state;
}

void adam_step(MlpParams& params, const GradientSet& grads, AdamState& state) {
    if (grads.layers.size() != params.layers.size()) {
        throw std::invalid_argument("adam_step: gradient/parameter shape mismatch");
    }
    state.step_count += 1;
    const double k = static_cast<double>(state.step_count);
    const auto& hp = state.hyper;
    const double m_corr = 1.0 - std::pow(hp.beta1, k);
    const double v_corr = 1.0 - std::pow(hp.beta2, k);

    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        auto& m = state.m.layers[l];
        auto& v = state.v.layers[l];
        const auto& g = grads.layers[l];
        auto& p = params.layers[l];

        m.weights = hp.beta1 * m.weights + (1.0 - hp.beta1) * g.weights;
        m.biases = hp.beta1 * m.biases + (1.0 - hp.beta1) * g.biases;
        v.weights.array() =
            hp.beta2 * v.weights.array() + (1.0 - hp.beta2) * g.weights.array().square();
        v.biases.array() =
            hp.beta2 * v.biases.array() + (1.0 - hp.beta2) * g.biases.array().square();

        p.weights.array() -= hp.lr * (m.weights.array() / m_corr) /
                             ((v.weights.array() / v_corr).sqrt() + hp.eps);
        p.biases.array() -= hp.lr * (m.biases.array() / m_corr) /
                            ((v.biases.array() / v_corr).sqrt() + hp.eps);
    }
}

TrainRecord train(const TrainConfig& config) {
    if (config.epochs_max < 1) throw std::invalid_argument("train: epochs_max must be >= 1");
    if (config.n_train < 2) throw std::invalid_argument("train: n_train must be >= 2");
    if (config.record_every < 1) throw std::invalid_argument("train: record_every must be >= 1");

    const auto& prob = config.problem;
    const std::vector<double> train_points =
        collocation_points(config.n_train, prob.t0, prob.t_end, config.sampling, config.seed);
    // Held-out points from a disjoint seed stream.
    const std::vector<double> valid_points = collocation_points(
        config.n_valid, prob.t0, prob.t_end, SamplingMode::UniformRandom, config.seed + 1);

    TrainRecord record;
    record.final_params = init_params(config.widths, config.activation, config.seed);
    AdamState state = make_adam_state(record.final_params, config.adam);

    const auto start = std::chrono::steady_clock::now();
    // Epoch e observes the loss after e Adam steps; one more step follows
    // unless the loss threshold was hit or the budget is spent.
    for (int epoch = 0; epoch < config.epochs_max; ++epoch) {
        double loss;
        GradientSet grads;
        try {
            auto lg = loss_and_grad(record.final_params, prob, config.transform, train_points,
                                    config.ic_penalty_lambda);
            loss = lg.loss;
            grads = std::move(lg.grads);
        } catch (const std::runtime_error& err) {
            throw std::runtime_error("train: aborted at epoch " + std::to_string(epoch) +
                                     " (" + to_string(config.activation) + "): " + err.what());
        }

        const bool hit_threshold =
            config.loss_threshold.has_value() && loss <= *config.loss_threshold;
        if (epoch % config.record_every == 0 || hit_threshold ||
            epoch == config.epochs_max - 1) {
            record.train_loss_history.emplace_back(epoch, loss);
            record.valid_loss_history.emplace_back(
                epoch, collocation_loss(record.final_params, prob, config.transform,
                                        valid_points, config.ic_penalty_lambda));
        }
        if (hit_threshold) {
            record.converged = true;
            record.epochs_run = epoch;
            record.wall_time_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return record;
        }
        adam_step(record.final_params, grads, state);
    }
    record.epochs_run = config.epochs_max;
    record.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

SolutionTrace evaluate_on_grid(const MlpParams& params, const OscillatorProblem& problem,
                               TrialTransformKind transform, int n_grid) {
    if (n_grid < 2) throw std::invalid_argument("evaluate_on_grid: n_grid must be >= 2");
    SolutionTrace trace;
    trace.times = collocation_points(n_grid, problem.t0, problem.t_end,
                                     SamplingMode::Equispaced, 0);
    trace.values.reserve(trace.times.size());
    trace.velocities.reserve(trace.times.size());
    for (double t : trace.times) {
        const Jet2 u = trial_jet(transform, problem, forward_jet(params, t), t);
        trace.values.push_back(u.v);
        trace.velocities.push_back(u.d1);
    }
    return trace;
}

void write_run_dir(const TrainRecord& record, const TrainConfig& config,
                   const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    {
        std::ofstream out(dir / "history.csv");
        if (!out) throw std::runtime_error("cannot write " + (dir / "history.csv").string());
        out << "epoch,train_loss,valid_loss\n";
        std::map<int, std::pair<double, double>> rows;
        for (const auto& [epoch, loss] : record.train_loss_history) {
            rows[epoch].first = loss;
            rows[epoch].second = std::nan("");
        }
        for (const auto& [epoch, loss] : record.valid_loss_history) rows[epoch].second = loss;
        char buf[32];
        for (const auto& [epoch, losses] : rows) {
            out << epoch << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", losses.first);
            out << buf << ',';
            if (std::isnan(losses.second)) {
                out << '\n';
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g", losses.second);
                out << buf << '\n';
            }
        }
    }

    save_checkpoint(record.final_params, dir / "checkpoint");

    nlohmann::json meta;
    meta["config"] = {
        {"activation", to_string(config.activation)},
        {"widths", config.widths},
        {"seed", config.seed},
        {"epochs_max", config.epochs_max},
        {"loss_threshold",
         config.loss_threshold ? nlohmann::json(*config.loss_threshold) : nlohmann::json()},
        {"transform", to_string(config.transform)},
        {"n_train", config.n_train},
        {"n_valid", config.n_valid},
        {"sampling", to_string(config.sampling)},
        {"lr", config.adam.lr},
        {"beta1", config.adam.beta1},
        {"beta2", config.adam.beta2},
        {"eps", config.adam.eps},
        {"record_every", config.record_every},
        {"ic_penalty_lambda", config.ic_penalty_lambda},
        {"problem",
         {{"a", config.problem.a},
          {"u0", config.problem.u0},
          {"du0", config.problem.du0},
          {"t0", config.problem.t0},
          {"t_end", config.problem.t_end}}},
    };
    meta["epochs_run"] = record.epochs_run;
    meta["wall_time_seconds"] = record.wall_time_seconds;
    meta["converged"] = record.converged;
    meta["final_train_loss"] = record.train_loss_history.back().second;

    std::ofstream out(dir / "meta");
    if (!out) throw std::runtime_error("cannot write " + (dir / "meta").string());
    out << meta.dump(2) << '\n';
}

}  // namespace oscnet
