#include "oscnet/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace oscnet {

std::pair<double, double> rhs(const OscillatorProblem& problem, double u, double w) {
    const double g = problem.inertia(u);
    if (g <= 1e-12) {
        throw std::runtime_error("rhs: inertia polynomial <= 1e-12 at u = " +
                                 std::to_string(u));
    }
    return {w, -problem.restoring(u) / g};
}

namespace {

struct State {
    double u, w;
};

State rk4_step(const OscillatorProblem& p, const State& y, double h) {
    const auto [k1u, k1w] = rhs(p, y.u, y.w);
    const auto [k2u, k2w] = rhs(p, y.u + 0.5 * h * k1u, y.w + 0.5 * h * k1w);
    const auto [k3u, k3w] = rhs(p, y.u + 0.5 * h * k2u, y.w + 0.5 * h * k2w);
    const auto [k4u, k4w] = rhs(p, y.u + h * k3u, y.w + h * k3w);
    return {y.u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
            y.w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)};
}

void push(SolutionTrace& trace, double t, const State& y) {
    trace.times.push_back(t);
    trace.values.push_back(y.u);
    trace.velocities.push_back(y.w);
}

}  // namespace

SolutionTrace integrate_rk4(const OscillatorProblem& problem, double h, int n_steps) {
    if (!(h != 0.0)) throw std::invalid_argument("integrate_rk4: h must be nonzero");
    SolutionTrace trace;
    State y{problem.u0, problem.du0};
    double t = problem.t0;
    push(trace, t, y);
    for (int i = 0; i < n_steps; ++i) {
        y = rk4_step(problem, y, h);
        t = problem.t0 + (i + 1) * h;
        push(trace, t, y);
    }
    if (h < 0.0) {
        std::reverse(trace.times.begin(), trace.times.end());
        std::reverse(trace.values.begin(), trace.values.end());
        std::reverse(trace.velocities.begin(), trace.velocities.end());
    }
    return trace;
}

SolutionTrace integrate_dopri45(const OscillatorProblem& problem, double rtol, double atol,
                                double t_end) {
    if (!(rtol > 0.0) || !(atol > 0.0)) {
        throw std::invalid_argument("integrate_dopri45: tolerances must be positive");
    }
    // Dormand-Prince 5(4) tableau.
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // 5th-order minus embedded 4th-order weights.
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    SolutionTrace trace;
    State y{problem.u0, problem.du0};
    double t = problem.t0;
    push(trace, t, y);

    double h = (t_end - problem.t0) / 100.0;
    auto [f1u, f1w] = rhs(problem, y.u, y.w);  // FSAL

    while (t < t_end) {
        if (h < 1e-12) throw std::runtime_error("integrate_dopri45: step size underflow");
        h = std::min(h, t_end - t);

        const double y2u = y.u + h * a21 * f1u, y2w = y.w + h * a21 * f1w;
        const auto [f2u, f2w] = rhs(problem, y2u, y2w);
        const double y3u = y.u + h * (a31 * f1u + a32 * f2u),
                     y3w = y.w + h * (a31 * f1w + a32 * f2w);
        const auto [f3u, f3w] = rhs(problem, y3u, y3w);
        const double y4u = y.u + h * (a41 * f1u + a42 * f2u + a43 * f3u),
                     y4w = y.w + h * (a41 * f1w + a42 * f2w + a43 * f3w);
        const auto [f4u, f4w] = rhs(problem, y4u, y4w);
        const double y5u = y.u + h * (a51 * f1u + a52 * f2u + a53 * f3u + a54 * f4u),
                     y5w = y.w + h * (a51 * f1w + a52 * f2w + a53 * f3w + a54 * f4w);
        const auto [f5u, f5w] = rhs(problem, y5u, y5w);
        const double y6u = y.u + h * (a61 * f1u + a62 * f2u + a63 * f3u + a64 * f4u + a65 * f5u),
                     y6w = y.w + h * (a61 * f1w + a62 * f2w + a63 * f3w + a64 * f4w + a65 * f5w);
        const auto [f6u, f6w] = rhs(problem, y6u, y6w);
        const double ynu = y.u + h * (b1 * f1u + b3 * f3u + b4 * f4u + b5 * f5u + b6 * f6u);
        const double ynw = y.w + h * (b1 * f1w + b3 * f3w + b4 * f4w + b5 * f5w + b6 * f6w);
        const auto [f7u, f7w] = rhs(problem, ynu, ynw);

        const double eu = h * (e1 * f1u + e3 * f3u + e4 * f4u + e5 * f5u + e6 * f6u + e7 * f7u);
        const double ew = h * (e1 * f1w + e3 * f3w + e4 * f4w + e5 * f5w + e6 * f6w + e7 * f7w);
        const double su = atol + rtol * std::max(std::abs(y.u), std::abs(ynu));
        const double sw = atol + rtol * std::max(std::abs(y.w), std::abs(ynw));
        const double err = std::sqrt(0.5 * ((eu / su) * (eu / su) + (ew / sw) * (ew / sw)));

        if (err <= 1.0) {
            t += h;
            y = {ynu, ynw};
            f1u = f7u;
            f1w = f7w;
            push(trace, t, y);
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h *= factor;
    }
    return trace;
}

SolutionTrace integrate_ab4(const OscillatorProblem& problem, double h, int n_steps) {
    if (!(h > 0.0)) throw std::invalid_argument("integrate_ab4: h must be positive");
    if (n_steps < 4) throw std::invalid_argument("integrate_ab4: n_steps must be >= 4");

    SolutionTrace trace;
    State y{problem.u0, problem.du0};
    push(trace, problem.t0, y);

    // Three RK4 bootstrap steps.
    std::vector<std::pair<double, double>> f;
    f.push_back(rhs(problem, y.u, y.w));
    for (int i = 0; i < 3; ++i) {
        y = rk4_step(problem, y, h);
        push(trace, problem.t0 + (i + 1) * h, y);
        f.push_back(rhs(problem, y.u, y.w));
    }

    for (int i = 3; i < n_steps; ++i) {
        const auto& [f0u, f0w] = f[i];
        const auto& [fm1u, fm1w] = f[i - 1];
        const auto& [fm2u, fm2w] = f[i - 2];
        const auto& [fm3u, fm3w] = f[i - 3];
        y.u += h / 24.0 * (55.0 * f0u - 59.0 * fm1u + 37.0 * fm2u - 9.0 * fm3u);
        y.w += h / 24.0 * (55.0 * f0w - 59.0 * fm1w + 37.0 * fm2w - 9.0 * fm3w);
        push(trace, problem.t0 + (i + 1) * h, y);
        f.push_back(rhs(problem, y.u, y.w));
    }
    return trace;
}

SolutionTrace resample_hermite(const SolutionTrace& trace, const std::vector<double>& grid) {
    if (trace.size() < 2 || trace.velocities.size() != trace.size()) {
        throw std::invalid_argument("resample_hermite: trace needs >= 2 points with velocities");
    }
    SolutionTrace out;
    out.times = grid;
    out.values.reserve(grid.size());
    out.velocities.reserve(grid.size());
    for (double t : grid) {
        if (t < trace.times.front() - 1e-12 || t > trace.times.back() + 1e-12) {
            throw std::invalid_argument("resample_hermite: grid point " + std::to_string(t) +
                                        " outside trace range");
        }
        auto it = std::upper_bound(trace.times.begin(), trace.times.end(), t);
        std::size_t k = static_cast<std::size_t>(it - trace.times.begin());
        if (k == 0) k = 1;
        if (k >= trace.size()) k = trace.size() - 1;
        const double t0 = trace.times[k - 1], t1 = trace.times[k];
        const double dt = t1 - t0;
        const double x = (t - t0) / dt;
        const double u0 = trace.values[k - 1], u1 = trace.values[k];
        const double m0 = trace.velocities[k - 1] * dt, m1 = trace.velocities[k] * dt;
        const double x2 = x * x, x3 = x2 * x;
        const double u = (2.0 * x3 - 3.0 * x2 + 1.0) * u0 + (x3 - 2.0 * x2 + x) * m0 +
                         (-2.0 * x3 + 3.0 * x2) * u1 + (x3 - x2) * m1;
        const double du = ((6.0 * x2 - 6.0 * x) * u0 + (3.0 * x2 - 4.0 * x + 1.0) * m0 +
                           (-6.0 * x2 + 6.0 * x) * u1 + (3.0 * x2 - 2.0 * x) * m1) /
                          dt;
        out.values.push_back(u);
        out.velocities.push_back(du);
    }
    return out;
}

void write_trace_csv(const SolutionTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trace file: " + path.string());
    const bool has_v = trace.velocities.size() == trace.size();
    out << (has_v ? "t,u,v\n" : "t,u\n");
    char buf[32];
    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", trace.times[i]);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", trace.values[i]);
        out << buf;
        if (has_v) {
            std::snprintf(buf, sizeof(buf), "%.17g", trace.velocities[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("trace write failed: " + path.string());
}

}  // namespace oscnet
