#include "oscnet/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace oscnet {

double OscillatorProblem::inertia(double u) const {
    const double u2 = u * u;
    return a[0] + a[1] * u2 + a[2] * u2 * u2;
}

double OscillatorProblem::restoring(double u) const {
    const double u2 = u * u;
    return u * (a[3] + u2 * (a[4] + u2 * (a[5] + u2 * a[6])));
}

OscillatorProblem OscillatorProblem::make(const std::array<double, 7>& a, double u0,
                                          double du0, double t0, double t_end) {
    OscillatorProblem p{a, u0, du0, t0, t_end};
    if (!(a[0] > 0.0)) throw std::invalid_argument("oscillator problem: A0 must be positive");
    if (!(t_end > t0)) throw std::invalid_argument("oscillator problem: t_end must exceed t0");
    const double umax = 2.0 * std::abs(u0);
    for (int i = 0; i < 1000; ++i) {
        const double u = -umax + 2.0 * umax * i / 999.0;
        if (!(p.inertia(u) > 0.0)) {
            throw std::invalid_argument(
                "oscillator problem: inertia polynomial not positive at u = " +
                std::to_string(u));
        }
    }
    return p;
}

OscillatorProblem default_mems_problem() {
    return OscillatorProblem::make({1.0, 0.5, 0.25, 1.0, 0.5, 0.25, 0.1},
                                   std::numbers::pi / 3.0, 0.0, 0.0, 10.0);
}

OscillatorProblem harmonic_problem(double t_end) {
    return OscillatorProblem::make({1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0}, 1.0, 0.0, 0.0, t_end);
}

std::string to_string(TrialTransformKind kind) {
    return kind == TrialTransformKind::FirstOrder ? "first_order" : "second_order";
}

TrialTransformKind transform_from_string(std::string_view name) {
    if (name == "first_order") return TrialTransformKind::FirstOrder;
    if (name == "second_order") return TrialTransformKind::SecondOrder;
    throw std::invalid_argument("unknown trial transform: " + std::string(name));
}

Jet2 trial_jet(TrialTransformKind kind, const OscillatorProblem& problem, const Jet2& net,
               double t) {
    const double dt = t - problem.t0;
    const double e = std::exp(-dt);
    const double s = -std::expm1(-dt);  // 1 - e^{-(t-t0)}, exact zero at t0
    const double s1 = e;
    const double s2 = -e;

    if (kind == TrialTransformKind::FirstOrder) {
        return {problem.u0 + s * net.v,
                s1 * net.v + s * net.d1,
                s2 * net.v + 2.0 * s1 * net.d1 + s * net.d2};
    }
    const double du0 = problem.du0;
    return {problem.u0 + du0 * s + s * s * net.v,
            du0 * s1 + 2.0 * s * s1 * net.v + s * s * net.d1,
            du0 * s2 + 2.0 * (s1 * s1 + s * s2) * net.v + 4.0 * s * s1 * net.d1 +
                s * s * net.d2};
}

double residual(const OscillatorProblem& problem, const Jet2& u) {
    return problem.inertia(u.v) * u.d2 + problem.restoring(u.v);
}

std::string to_string(SamplingMode mode) {
    return mode == SamplingMode::Equispaced ? "equispaced" : "uniform_random";
}

SamplingMode sampling_from_string(std::string_view name) {
    if (name == "equispaced") return SamplingMode::Equispaced;
    if (name == "uniform_random") return SamplingMode::UniformRandom;
    throw std::invalid_argument("unknown sampling mode: " + std::string(name));
}

std::vector<double> collocation_points(int n, double t0, double t_end, SamplingMode mode,
                                       std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("collocation_points: n must be >= 2");
    if (!(t_end > t0)) throw std::invalid_argument("collocation_points: t_end must exceed t0");

    std::vector<double> points(static_cast<std::size_t>(n));
    if (mode == SamplingMode::Equispaced) {
        for (int i = 0; i < n; ++i) {
            points[i] = t0 + (t_end - t0) * i / (n - 1);
        }
        points.back() = t_end;
    } else {
        std::mt19937_64 rng(seed);
        for (auto& t : points) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            t = t0 + (t_end - t0) * u;
        }
        std::sort(points.begin(), points.end());
    }
    return points;
}

}  // namespace oscnet
