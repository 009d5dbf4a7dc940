#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "oscnet/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"oscnet: neural-network and classical solvers for the MEMS beam oscillator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;

    CLI::App* subs[] = {
        app.add_subcommand("train", "train one network and compare to reference"),
        app.add_subcommand("integrate", "reference integrator only, write trace.csv"),
        app.add_subcommand("bench", "train all five activations, write bench.csv"),
    };
    for (CLI::App* sub : subs) {
        sub->add_option("config", config_path, "JSON run config")->required();
        sub->add_option("--out-dir", out_dir, "override output.directory");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        oscnet::RunConfig config = oscnet::load_run_config(config_path);
        if (!out_dir.empty()) config.output.directory = out_dir;

        std::filesystem::path result;
        if (app.got_subcommand("train")) {
            result = oscnet::run_train(config);
        } else if (app.got_subcommand("integrate")) {
            result = oscnet::run_integrate(config);
        } else {
            result = oscnet::run_bench(config);
        }
        std::printf("ok: %s\n", result.string().c_str());
        return 0;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
}
