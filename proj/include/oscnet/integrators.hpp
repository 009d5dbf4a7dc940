#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "oscnet/problem.hpp"

namespace oscnet {

// Sampled trajectory u(t), optionally with velocities u'(t). Integrators
// always fill velocities; network evaluation may leave them empty.
struct SolutionTrace {
    std::vector<double> times;       // strictly ascending
    std::vector<double> values;      // u
    std::vector<double> velocities;  // u', empty when not tracked

    std::size_t size() const { return times.size(); }
};

// Explicit first-order form of the oscillator: du = w,
// dw = -restoring(u) / inertia(u). Errors out if the inertia polynomial
// drops to <= 1e-12 (trajectory left the validated range).
std::pair<double, double> rhs(const OscillatorProblem& problem, double u, double w);

// Classical fixed-step 4th-order Runge-Kutta; trace includes every step.
SolutionTrace integrate_rk4(const OscillatorProblem& problem, double h, int n_steps);

// Dormand-Prince 5(4) embedded pair with standard step control (safety 0.9,
// growth clamp [0.2, 5.0]). The trace holds the accepted steps; resample
// onto a user grid with resample_hermite.
SolutionTrace integrate_dopri45(const OscillatorProblem& problem, double rtol, double atol,
                                double t_end);

// 4-step Adams-Bashforth, bootstrapped with three RK4 steps.
SolutionTrace integrate_ab4(const OscillatorProblem& problem, double h, int n_steps);

// Cubic Hermite interpolation over (u, u') at the trace's accepted steps.
SolutionTrace resample_hermite(const SolutionTrace& trace, const std::vector<double>& grid);

// CSV with columns t,u[,v] at 17 significant digits.
void write_trace_csv(const SolutionTrace& trace, const std::filesystem::path& path);

}  // namespace oscnet
