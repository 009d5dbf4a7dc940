#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "oscnet/commands.hpp"

using namespace oscnet;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("oscnet_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

json tiny_train_json(const std::filesystem::path& out_dir) {
    return {
        {"network", {{"widths", {1, 8, 1}}, {"activation", "asu"}}},
        {"training", {{"epochs_max", 30}, {"seed", 1}, {"n_train", 20}, {"n_valid", 10}}},
        {"output", {{"directory", out_dir.string()}, {"n_grid", 50}}},
    };
}

}  // namespace

TEST_CASE("config defaults") {
    const RunConfig cfg = run_config_from_json(json::object());
    CHECK(cfg.training.widths == std::vector<int>{1, 128, 128, 128, 1});
    CHECK(cfg.training.activation == ActivationKind::Asu);
    CHECK(cfg.training.transform == TrialTransformKind::SecondOrder);
    CHECK(cfg.training.n_train == 200);
    CHECK(cfg.training.n_valid == 100);
    CHECK(cfg.training.adam.lr == 1e-3);
    CHECK(cfg.training.problem.u0 == doctest::Approx(std::numbers::pi / 3.0));
    CHECK(cfg.training.problem.t_end == 10.0);
    CHECK(cfg.reference.method == "dopri45");
    CHECK_FALSE(cfg.training.loss_threshold.has_value());
}

TEST_CASE("unknown keys are rejected before any compute") {
    json doc = {{"training", {{"activaton", "asu"}}}};
    CHECK_THROWS_WITH_AS(run_config_from_json(doc), doctest::Contains("activaton"),
                         std::invalid_argument);
    json top = {{"trainng", json::object()}};
    CHECK_THROWS_AS(run_config_from_json(top), std::invalid_argument);
}

TEST_CASE("validation lists every violation at once") {
    json doc = {
        {"problem", {{"t0", 5.0}, {"t_end", 1.0}}},
        {"training", {{"n_train", 1}, {"lr", -2.0}}},
    };
    try {
        run_config_from_json(doc);
        FAIL("expected validation to throw");
    } catch (const std::invalid_argument& err) {
        const std::string msg = err.what();
        CHECK(msg.find("t_end") != std::string::npos);
        CHECK(msg.find("n_train") != std::string::npos);
        CHECK(msg.find("lr") != std::string::npos);
    }
}

TEST_CASE("run_train writes the full run directory deterministically") {
    const auto dir = scratch_dir("train");
    RunConfig cfg = run_config_from_json(tiny_train_json(dir));
    run_train(cfg);
    for (const char* name : {"history.csv", "checkpoint", "meta", "solution.csv",
                             "comparison.csv", "solution.svg", "comparison.svg", "loss.svg"}) {
        CAPTURE(name);
        CHECK(std::filesystem::exists(dir / name));
    }
    const std::string first = slurp(dir / "history.csv");

    const auto dir2 = scratch_dir("train2");
    cfg.output.directory = dir2.string();
    run_train(cfg);
    CHECK(first == slurp(dir2 / "history.csv"));

    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("run_integrate reproduces cos t on the harmonic problem") {
    const auto dir = scratch_dir("integrate");
    json doc = {
        {"problem", {{"a", {1, 0, 0, 1, 0, 0, 0}}, {"u0", 1.0}, {"t_end", 6.283185307179586}}},
        {"output", {{"directory", dir.string()}, {"n_grid", 100}}},
    };
    const RunConfig cfg = run_config_from_json(doc);
    const auto path = run_integrate(cfg);
    CHECK(path.filename() == "trace.csv");

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);  // header
    double worst = 0.0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string t_str, u_str;
        std::getline(row, t_str, ',');
        std::getline(row, u_str, ',');
        worst = std::max(worst, std::abs(std::stod(u_str) - std::cos(std::stod(t_str))));
    }
    CHECK(worst < 1e-8);
    std::filesystem::remove_all(dir);
}

TEST_CASE("reference methods agree through the command layer") {
    json doc = {{"output", {{"n_grid", 200}}}};
    RunConfig cfg = run_config_from_json(doc);
    cfg.reference.method = "dopri45";
    const SolutionTrace dp = reference_on_grid(cfg);
    cfg.reference.method = "rk4";
    const SolutionTrace rk = reference_on_grid(cfg);
    cfg.reference.method = "ab4";
    const SolutionTrace ab = reference_on_grid(cfg);
    for (std::size_t i = 0; i < dp.size(); ++i) {
        CHECK(std::abs(dp.values[i] - rk.values[i]) < 1e-5);
        CHECK(std::abs(dp.values[i] - ab.values[i]) < 1e-5);
    }
}

TEST_CASE("run_bench emits five rows with stable epoch columns") {
    const auto dir = scratch_dir("bench");
    json doc = tiny_train_json(dir);
    doc["training"]["epochs_max"] = 25;
    doc["training"]["loss_threshold"] = 1e-12;  // nothing converges: deterministic columns
    doc["output"]["n_grid"] = 30;
    const RunConfig cfg = run_config_from_json(doc);
    const auto csv_path = run_bench(cfg);

    const std::string csv = slurp(csv_path);
    CHECK(csv.rfind("activation,epochs_to_threshold,wall_time_seconds,final_train_loss,"
                    "max_abs_error_vs_ref\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    for (const char* name : {"tanh", "mish", "sine", "gcu", "asu"}) {
        CAPTURE(name);
        CHECK(csv.find(name) != std::string::npos);
        CHECK(std::filesystem::exists(dir / name / "checkpoint"));
    }
    CHECK(std::filesystem::exists(dir / "walltime.svg"));

    // epochs column is a pure function of the config
    auto epochs_column = [](const std::string& text) {
        std::istringstream in(text);
        std::string line, out;
        std::getline(in, line);
        while (std::getline(in, line)) {
            const auto a = line.find(','), b = line.find(',', line.find(',') + 1);
            out += line.substr(0, b) + ";";
            (void)a;
        }
        return out;
    };
    const std::string first = epochs_column(csv);
    run_bench(cfg);
    CHECK(first == epochs_column(slurp(csv_path)));

    std::filesystem::remove_all(dir);
}
