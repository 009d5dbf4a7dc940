#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "oscnet/activation.hpp"
#include "oscnet/network.hpp"

namespace oscnet {

// Conservative MEMS beam oscillator,
//   (A0 + A1 u^2 + A2 u^4) u'' + A3 u + A4 u^3 + A5 u^5 + A6 u^7 = 0,
// with initial displacement u0 and velocity du0 on [t0, t_end].
struct OscillatorProblem {
    std::array<double, 7> a{};  // A0..A6
    double u0 = 0.0;
    double du0 = 0.0;
    double t0 = 0.0;
    double t_end = 0.0;

    // inertia polynomial g(u) = A0 + A1 u^2 + A2 u^4
    double inertia(double u) const;
    // restoring polynomial p(u) = A3 u + A4 u^3 + A5 u^5 + A6 u^7
    double restoring(double u) const;

    // Validates A0 > 0, t_end > t0, and strict positivity of the inertia
    // polynomial on a 1000-point grid over |u| <= 2|u0|.
    static OscillatorProblem make(const std::array<double, 7>& a, double u0, double du0,
                                  double t0, double t_end);
};

// Defaults used when a config does not override the problem. Not paper
// ground truth; chosen to give a bounded periodic orbit.
OscillatorProblem default_mems_problem();

// Harmonic special case u'' + u = 0, u(0) = 1: solution cos t.
OscillatorProblem harmonic_problem(double t_end);

// How the network output is reshaped into a candidate solution that meets
// the initial conditions by construction. With s = 1 - e^{-(t-t0)}:
//   FirstOrder:  u~ = u0 + s N            (enforces u~(t0) = u0 only)
//   SecondOrder: u~ = u0 + du0 s + s^2 N  (also enforces u~'(t0) = du0)
enum class TrialTransformKind { FirstOrder, SecondOrder };

std::string to_string(TrialTransformKind kind);
TrialTransformKind transform_from_string(std::string_view name);

Jet2 trial_jet(TrialTransformKind kind, const OscillatorProblem& problem, const Jet2& net,
               double t);

// ODE residual evaluated on a solution jet.
double residual(const OscillatorProblem& problem, const Jet2& u);

enum class SamplingMode { Equispaced, UniformRandom };

std::string to_string(SamplingMode mode);
SamplingMode sampling_from_string(std::string_view name);

// Equispaced includes both endpoints; uniform_random is seed-deterministic
// and returned sorted ascending. Requires n >= 2 and t_end > t0.
std::vector<double> collocation_points(int n, double t0, double t_end, SamplingMode mode,
                                       std::uint64_t seed);

// Mean squared residual of the trial solution over the collocation points,
// plus an optional penalty lambda * u~'(t0)^2. Shares the forward engine
// with loss_and_grad, so the two agree bit for bit.
double collocation_loss(const MlpParams& params, const OscillatorProblem& problem,
                        TrialTransformKind transform, std::span<const double> points,
                        double ic_penalty_lambda = 0.0);

}  // namespace oscnet
