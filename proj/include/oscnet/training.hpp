#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "oscnet/autodiff.hpp"
#include "oscnet/integrators.hpp"
#include "oscnet/network.hpp"
#include "oscnet/problem.hpp"

namespace oscnet {

struct AdamHyper {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    GradientSet m;  // first-moment accumulator
    GradientSet v;  // second-moment accumulator, entries stay >= 0
    long step_count = 0;
    AdamHyper hyper;
};

AdamState make_adam_state(const MlpParams& params, const AdamHyper& hyper);

// One bias-corrected Adam update, in place.
void adam_step(MlpParams& params, const GradientSet& grads, AdamState& state);

struct TrainConfig {
    ActivationKind activation = ActivationKind::Asu;
    std::vector<int> widths = {1, 128, 128, 128, 1};
    std::uint64_t seed = 1;
    int epochs_max = 10000;
    std::optional<double> loss_threshold;  // early stop when train loss <= threshold
    OscillatorProblem problem = default_mems_problem();
    TrialTransformKind transform = TrialTransformKind::SecondOrder;
    int n_train = 200;
    int n_valid = 100;
    SamplingMode sampling = SamplingMode::Equispaced;
    AdamHyper adam;
    int record_every = 10;
    double ic_penalty_lambda = 0.0;
};

struct TrainRecord {
    std::vector<std::pair<int, double>> train_loss_history;  // (epoch, loss)
    std::vector<std::pair<int, double>> valid_loss_history;
    int epochs_run = 0;
    double wall_time_seconds = 0.0;
    MlpParams final_params;
    bool converged = false;
};

// Full-batch loop: every epoch evaluates loss_and_grad on all training
// points and applies one Adam step. Epoch e in the history is the loss
// after e steps; epoch 0 is the initial parameters. Deterministic for a
// fixed config except for wall time.
TrainRecord train(const TrainConfig& config);

// Trial-solution values on an equispaced grid over [t0, t_end].
SolutionTrace evaluate_on_grid(const MlpParams& params, const OscillatorProblem& problem,
                               TrialTransformKind transform, int n_grid);

// Writes history.csv, checkpoint and meta into dir (created if missing).
void write_run_dir(const TrainRecord& record, const TrainConfig& config,
                   const std::filesystem::path& dir);

}  // namespace oscnet
