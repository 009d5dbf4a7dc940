#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <string>

#include "oscnet/training.hpp"

namespace oscnet {

struct ReferenceConfig {
    std::string method = "dopri45";  // dopri45 | rk4 | ab4
    double rtol = 1e-10;
    double atol = 1e-12;
    double h = 1e-3;  // fixed-step methods
};

struct OutputConfig {
    std::string directory = "out";
    int n_grid = 1000;
};

// Everything a run needs, read from one JSON config file. Missing fields
// take the defaults below; unknown fields are an error.
struct RunConfig {
    TrainConfig training;  // also carries the problem definition
    ReferenceConfig reference;
    OutputConfig output;
};

// Throws std::invalid_argument listing every violation at once.
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace oscnet
