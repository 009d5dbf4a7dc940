#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "oscnet/network.hpp"
#include "oscnet/problem.hpp"

namespace oscnet {

struct LayerGrads {
    Eigen::MatrixXd weights;  // same shape as the layer's weight matrix
    Eigen::VectorXd biases;
};

// Loss gradient with respect to every network parameter, shape-mirroring
// MlpParams.
struct GradientSet {
    std::vector<LayerGrads> layers;
};

GradientSet zeros_like(const MlpParams& params);

struct LossAndGrad {
    double loss = 0.0;
    GradientSet grads;
};

// Mean squared ODE residual of the trial solution over the collocation
// points (plus the optional initial-velocity penalty), and its exact
// parameter gradient.
//
// The forward pass runs in order-2 jet arithmetic over all points at once;
// the backward pass is reverse accumulation through the recorded jet
// expressions, which needs activation derivatives up to order 3 (the
// f''(a) a.d1^2 term differentiates to f'''). Reductions over points are
// performed in a fixed sequential order.
LossAndGrad loss_and_grad(const MlpParams& params, const OscillatorProblem& problem,
                          TrialTransformKind transform, std::span<const double> points,
                          double ic_penalty_lambda = 0.0);

}  // namespace oscnet
