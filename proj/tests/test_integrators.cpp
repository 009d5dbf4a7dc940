#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "helpers.hpp"
#include "oscnet/integrators.hpp"

using namespace oscnet;
constexpr double kPi = std::numbers::pi;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("rhs first-order reduction") {
    const OscillatorProblem harmonic = harmonic_problem(10.0);
    const auto [du, dw] = rhs(harmonic, 1.0, 0.0);
    CHECK(du == 0.0);
    CHECK(dw == -1.0);

    const OscillatorProblem mems = default_mems_problem();
    const auto [du2, dw2] = rhs(mems, 0.0, 3.7);
    CHECK(du2 == 3.7);
    CHECK(dw2 == 0.0);

    const auto [du3, dw3] = rhs(mems, mems.u0, 0.0);
    CHECK(std::isfinite(dw3));
    CHECK(dw3 < 0.0);
}

TEST_CASE("rhs rejects a vanished inertia polynomial") {
    OscillatorProblem bad = harmonic_problem(1.0);
    bad.a[1] = -1.0;  // bypass make(): g(u) = 1 - u^2 vanishes at |u| = 1
    CHECK_THROWS_AS(rhs(bad, 2.0, 0.0), std::runtime_error);
}

TEST_CASE("rk4 reproduces cos t on the harmonic problem") {
    const OscillatorProblem harmonic = harmonic_problem(2.0 * kPi);
    const int n = 3000;
    const SolutionTrace trace = integrate_rk4(harmonic, kPi / n, n);
    CHECK(std::abs(trace.values.back() - (-1.0)) < 1e-9);
}

TEST_CASE("rk4 stays at an equilibrium") {
    const OscillatorProblem rest =
        OscillatorProblem::make({1, 0, 0, 1, 0, 0, 0}, 0.0, 0.0, 0.0, 5.0);
    const SolutionTrace trace = integrate_rk4(rest, 1e-2, 100);
    for (double u : trace.values) CHECK(u == 0.0);
    for (double w : trace.velocities) CHECK(w == 0.0);
}

TEST_CASE("rk4 converges at fourth order") {
    const OscillatorProblem prob = default_mems_problem();
    const SolutionTrace ref = integrate_dopri45(prob, 1e-12, 1e-14, 5.0);

    auto max_err = [&](double h, int n) {
        const SolutionTrace coarse = integrate_rk4(prob, h, n);
        const SolutionTrace fine = resample_hermite(ref, coarse.times);
        return max_abs_diff(coarse.values, fine.values);
    };
    const double e1 = max_err(0.05, 100);
    const double e2 = max_err(0.025, 200);
    const double ratio = e1 / e2;
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}

TEST_CASE("rk4 time reversal returns to the initial state") {
    const OscillatorProblem prob = default_mems_problem();
    const SolutionTrace forward = integrate_rk4(prob, 1e-3, 5000);
    OscillatorProblem back = prob;
    back.u0 = forward.values.back();
    back.du0 = forward.velocities.back();
    const SolutionTrace reverse = integrate_rk4(back, -1e-3, 5000);
    // reversed trace is ascending in time; its first entry is the final state
    CHECK(std::abs(reverse.values.front() - prob.u0) < 1e-8);
    CHECK(std::abs(reverse.velocities.front() - prob.du0) < 1e-8);
}

TEST_CASE("dopri45 closes the harmonic period") {
    const OscillatorProblem harmonic = harmonic_problem(2.0 * kPi);
    const SolutionTrace trace = integrate_dopri45(harmonic, 1e-10, 1e-12, 2.0 * kPi);
    CHECK(trace.times.back() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(std::abs(trace.values.back() - 1.0) < 1e-8);
}

TEST_CASE("dopri45 trace shifts by less than 10x a loosened rtol") {
    const OscillatorProblem prob = default_mems_problem();
    const auto grid = collocation_points(200, 0.0, 10.0, SamplingMode::Equispaced, 0);
    const SolutionTrace tight =
        resample_hermite(integrate_dopri45(prob, 1e-10, 1e-12, 10.0), grid);
    const SolutionTrace loose =
        resample_hermite(integrate_dopri45(prob, 1e-7, 1e-9, 10.0), grid);
    const double amplitude =
        *std::max_element(tight.values.begin(), tight.values.end());
    CHECK(max_abs_diff(tight.values, loose.values) < 10.0 * 1e-7 * amplitude);
}

TEST_CASE("ab4 reproduces cos t and its rk4 bootstrap") {
    const OscillatorProblem harmonic = harmonic_problem(2.0 * kPi);
    const int n = 3000;
    const double h = kPi / n;
    const SolutionTrace ab = integrate_ab4(harmonic, h, n);
    CHECK(std::abs(ab.values.back() - (-1.0)) < 1e-6);

    const SolutionTrace rk = integrate_rk4(harmonic, h, 3);
    for (int i = 0; i < 4; ++i) {
        CHECK(ab.values[i] == rk.values[i]);
        CHECK(ab.velocities[i] == rk.velocities[i]);
    }
    CHECK_THROWS_AS(integrate_ab4(harmonic, h, 3), std::invalid_argument);
}

TEST_CASE("all integrators agree pairwise on the default problem") {
    const OscillatorProblem prob = default_mems_problem();
    const double h = 1e-3;
    const int n = 10000;
    const SolutionTrace rk = integrate_rk4(prob, h, n);
    const SolutionTrace ab = integrate_ab4(prob, h, n);
    const SolutionTrace dp =
        resample_hermite(integrate_dopri45(prob, 1e-10, 1e-12, 10.0), rk.times);
    CHECK(max_abs_diff(rk.values, dp.values) < 1e-6);
    CHECK(max_abs_diff(ab.values, dp.values) < 1e-5);
    CHECK(max_abs_diff(rk.values, ab.values) < 1e-5);
}

TEST_CASE("default problem orbit is bounded and periodic over [0, 100]") {
    OscillatorProblem prob = default_mems_problem();
    prob.t_end = 100.0;
    const SolutionTrace trace = integrate_dopri45(prob, 1e-10, 1e-12, 100.0);
    double max_u = 0.0;
    int velocity_sign_changes = 0;
    double prev_w = trace.velocities.front();
    for (std::size_t i = 0; i < trace.size(); ++i) {
        max_u = std::max(max_u, std::abs(trace.values[i]));
        const double w = trace.velocities[i];
        if (w * prev_w < 0.0) ++velocity_sign_changes;
        if (w != 0.0) prev_w = w;
    }
    CHECK(max_u <= std::abs(prob.u0) * (1.0 + 1e-3));
    CHECK(velocity_sign_changes >= 3);
}

TEST_CASE("trace CSV uses full precision") {
    SolutionTrace trace;
    trace.times = {0.0, 0.1};
    trace.values = {1.0 / 3.0, 2.0 / 3.0};
    trace.velocities = {0.0, -1.0};
    const auto path = std::filesystem::temp_directory_path() / "oscnet_trace_test.csv";
    write_trace_csv(trace, path);
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "t,u,v");
    CHECK(row.find("0.33333333333333331") != std::string::npos);
    std::filesystem::remove(path);
}
