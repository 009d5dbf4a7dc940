#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "oscnet/activation.hpp"

namespace oscnet {

struct LayerParams {
    Eigen::MatrixXd weights;  // rows = output width, cols = input width
    Eigen::VectorXd biases;   // length = output width
};

// Fully connected network mapping scalar time to a scalar output. The
// activation applies to every hidden layer; the output layer is affine.
struct MlpParams {
    std::vector<LayerParams> layers;
    ActivationKind activation = ActivationKind::Tanh;

    std::vector<int> widths() const;
    std::size_t parameter_count() const;
};

// Glorot-uniform weights (bounds +-sqrt(6/(fan_in+fan_out))), zero biases.
// Fully determined by seed: the same (widths, seed) yields bit-identical
// parameters regardless of activation.
MlpParams init_params(const std::vector<int>& widths, ActivationKind activation,
                      std::uint64_t seed);

// Network output together with its first and second time derivatives,
// obtained by propagating the seed jet (t, 1, 0) through the layers.
Jet2 forward_jet(const MlpParams& params, double t);

// Same propagation with a caller-supplied hidden-layer jet rule. Test hook:
// substituting the identity jet collapses the network to one affine map.
using JetActivation = std::function<Jet2(ActivationKind, const Jet2&)>;
Jet2 forward_jet_with(const MlpParams& params, double t, const JetActivation& act);

// Text checkpoint: widths and activation name, then per layer the shape,
// row-major weights and biases as hex floats. Round-trip is lossless.
void save_checkpoint(const MlpParams& params, const std::filesystem::path& path);
MlpParams load_checkpoint(const std::filesystem::path& path);

}  // namespace oscnet
