#include "oscnet/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <vector>

namespace oscnet {

namespace {

using nlohmann::json;

class ConfigErrors {
  public:
    void add(const std::string& message) { messages_.push_back(message); }

    template <typename Fn>
    void collect(const std::string& where, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& err) {
            add(where + ": " + err.what());
        }
    }

    void throw_if_any() const {
        if (messages_.empty()) return;
        std::string all = "invalid config:";
        for (const auto& m : messages_) all += "\n  - " + m;
        throw std::invalid_argument(all);
    }

  private:
    std::vector<std::string> messages_;
};

void check_keys(const json& section, const std::string& name,
                const std::set<std::string>& allowed, ConfigErrors& errors) {
    if (!section.is_object()) {
        errors.add("section '" + name + "' must be an object");
        return;
    }
    for (const auto& [key, value] : section.items()) {
        if (!allowed.contains(key)) {
            errors.add("unknown key '" + name + "." + key + "'");
        }
    }
}

template <typename T>
void read(const json& section, const std::string& key, T& out, ConfigErrors& errors,
          const std::string& where) {
    if (!section.contains(key)) return;
    errors.collect(where + "." + key, [&] { out = section.at(key).get<T>(); });
}

}  // namespace

RunConfig run_config_from_json(const json& doc) {
    ConfigErrors errors;
    RunConfig cfg;

    check_keys(doc, "(top level)", {"problem", "network", "training", "reference", "output"},
               errors);
    if (!doc.is_object()) {
        errors.throw_if_any();
        return cfg;
    }

    std::array<double, 7> a = cfg.training.problem.a;
    double u0 = cfg.training.problem.u0, du0 = cfg.training.problem.du0;
    double t0 = cfg.training.problem.t0, t_end = cfg.training.problem.t_end;
    if (doc.contains("problem")) {
        const json& p = doc.at("problem");
        check_keys(p, "problem", {"a", "u0", "du0", "t0", "t_end"}, errors);
        if (p.is_object()) {
            read(p, "a", a, errors, "problem");
            read(p, "u0", u0, errors, "problem");
            read(p, "du0", du0, errors, "problem");
            read(p, "t0", t0, errors, "problem");
            read(p, "t_end", t_end, errors, "problem");
        }
    }
    errors.collect("problem", [&] {
        cfg.training.problem = OscillatorProblem::make(a, u0, du0, t0, t_end);
    });

    if (doc.contains("network")) {
        const json& n = doc.at("network");
        check_keys(n, "network", {"widths", "activation"}, errors);
        if (n.is_object()) {
            read(n, "widths", cfg.training.widths, errors, "network");
            if (n.contains("activation")) {
                errors.collect("network.activation", [&] {
                    cfg.training.activation =
                        activation_from_string(n.at("activation").get<std::string>());
                });
            }
        }
    }
    errors.collect("network.widths", [&] {
        // Shape validation without drawing parameters.
        init_params(cfg.training.widths, cfg.training.activation, 0);
    });

    if (doc.contains("training")) {
        const json& t = doc.at("training");
        check_keys(t, "training",
                   {"epochs_max", "loss_threshold", "lr", "beta1", "beta2", "eps", "seed",
                    "n_train", "n_valid", "sampling", "transform", "record_every",
                    "ic_penalty_lambda"},
                   errors);
        if (t.is_object()) {
            read(t, "epochs_max", cfg.training.epochs_max, errors, "training");
            if (t.contains("loss_threshold") && !t.at("loss_threshold").is_null()) {
                errors.collect("training.loss_threshold", [&] {
                    cfg.training.loss_threshold = t.at("loss_threshold").get<double>();
                });
            }
            read(t, "lr", cfg.training.adam.lr, errors, "training");
            read(t, "beta1", cfg.training.adam.beta1, errors, "training");
            read(t, "beta2", cfg.training.adam.beta2, errors, "training");
            read(t, "eps", cfg.training.adam.eps, errors, "training");
            read(t, "seed", cfg.training.seed, errors, "training");
            read(t, "n_train", cfg.training.n_train, errors, "training");
            read(t, "n_valid", cfg.training.n_valid, errors, "training");
            read(t, "record_every", cfg.training.record_every, errors, "training");
            read(t, "ic_penalty_lambda", cfg.training.ic_penalty_lambda, errors, "training");
            if (t.contains("sampling")) {
                errors.collect("training.sampling", [&] {
                    cfg.training.sampling =
                        sampling_from_string(t.at("sampling").get<std::string>());
                });
            }
            if (t.contains("transform")) {
                errors.collect("training.transform", [&] {
                    cfg.training.transform =
                        transform_from_string(t.at("transform").get<std::string>());
                });
            }
        }
    }
    if (cfg.training.epochs_max < 1) errors.add("training.epochs_max must be >= 1");
    if (cfg.training.n_train < 2) errors.add("training.n_train must be >= 2");
    if (cfg.training.n_valid < 2) errors.add("training.n_valid must be >= 2");
    if (cfg.training.record_every < 1) errors.add("training.record_every must be >= 1");
    if (!(cfg.training.adam.lr > 0.0)) errors.add("training.lr must be positive");

    if (doc.contains("reference")) {
        const json& r = doc.at("reference");
        check_keys(r, "reference", {"method", "rtol", "atol", "h"}, errors);
        if (r.is_object()) {
            read(r, "method", cfg.reference.method, errors, "reference");
            read(r, "rtol", cfg.reference.rtol, errors, "reference");
            read(r, "atol", cfg.reference.atol, errors, "reference");
            read(r, "h", cfg.reference.h, errors, "reference");
        }
    }
    if (cfg.reference.method != "dopri45" && cfg.reference.method != "rk4" &&
        cfg.reference.method != "ab4") {
        errors.add("reference.method must be one of dopri45, rk4, ab4");
    }
    if (!(cfg.reference.rtol > 0.0) || !(cfg.reference.atol > 0.0)) {
        errors.add("reference tolerances must be positive");
    }
    if (!(cfg.reference.h > 0.0)) errors.add("reference.h must be positive");

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        check_keys(o, "output", {"directory", "n_grid"}, errors);
        if (o.is_object()) {
            read(o, "directory", cfg.output.directory, errors, "output");
            read(o, "n_grid", cfg.output.n_grid, errors, "output");
        }
    }
    if (cfg.output.n_grid < 2) errors.add("output.n_grid must be >= 2");

    errors.throw_if_any();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("config parse error in " + path.string() + ": " +
                                    err.what());
    }
    return run_config_from_json(doc);
}

}  // namespace oscnet
