#include "oscnet/network.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace oscnet {

std::vector<int> MlpParams::widths() const {
    std::vector<int> w;
    if (layers.empty()) return w;
    w.push_back(static_cast<int>(layers.front().weights.cols()));
    for (const auto& layer : layers) w.push_back(static_cast<int>(layer.weights.rows()));
    return w;
}

std::size_t MlpParams::parameter_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers) n += layer.weights.size() + layer.biases.size();
    return n;
}

namespace {

// Uniform double in [0, 1) built directly from the generator output, so the
// stream does not depend on the standard library's distribution internals.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

MlpParams init_params(const std::vector<int>& widths, ActivationKind activation,
                      std::uint64_t seed) {
    if (widths.size() < 2) {
        throw std::invalid_argument("init_params: widths needs at least 2 entries");
    }
    for (int w : widths) {
        if (w <= 0) throw std::invalid_argument("init_params: widths must be positive");
    }
    if (widths.front() != 1 || widths.back() != 1) {
        throw std::invalid_argument("init_params: first and last width must be 1");
    }

    std::mt19937_64 rng(seed);
    MlpParams params;
    params.activation = activation;
    for (std::size_t l = 1; l < widths.size(); ++l) {
        const int fan_in = widths[l - 1];
        const int fan_out = widths[l];
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        LayerParams layer;
        layer.weights.resize(fan_out, fan_in);
        for (int r = 0; r < fan_out; ++r) {
            for (int c = 0; c < fan_in; ++c) {
                layer.weights(r, c) = (2.0 * next_unit(rng) - 1.0) * bound;
            }
        }
        layer.biases = Eigen::VectorXd::Zero(fan_out);
        params.layers.push_back(std::move(layer));
    }
    return params;
}

Jet2 forward_jet_with(const MlpParams& params, double t, const JetActivation& act) {
    const std::size_t n_layers = params.layers.size();
    Eigen::VectorXd hv(1), hd1(1), hd2(1);
    hv(0) = t;
    hd1(0) = 1.0;
    hd2(0) = 0.0;

    for (std::size_t l = 0; l < n_layers; ++l) {
        const auto& layer = params.layers[l];
        Eigen::VectorXd av = layer.weights * hv + layer.biases;
        Eigen::VectorXd ad1 = layer.weights * hd1;
        Eigen::VectorXd ad2 = layer.weights * hd2;
        if (!av.allFinite() || !ad1.allFinite() || !ad2.allFinite()) {
            throw std::runtime_error("forward_jet: non-finite value in layer " +
                                     std::to_string(l));
        }
        if (l + 1 == n_layers) {
            hv = std::move(av);
            hd1 = std::move(ad1);
            hd2 = std::move(ad2);
        } else {
            hv.resize(av.size());
            hd1.resize(av.size());
            hd2.resize(av.size());
            for (Eigen::Index i = 0; i < av.size(); ++i) {
                const Jet2 out = act(params.activation, {av(i), ad1(i), ad2(i)});
                hv(i) = out.v;
                hd1(i) = out.d1;
                hd2(i) = out.d2;
            }
        }
    }
    return {hv(0), hd1(0), hd2(0)};
}

Jet2 forward_jet(const MlpParams& params, double t) {
    return forward_jet_with(params, t, [](ActivationKind kind, const Jet2& a) {
        return act_jet(kind, a);
    });
}

namespace {

void write_double(std::ostream& out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%a", x);
    out << buf;
}

double read_double(std::istream& in) {
    std::string tok;
    if (!(in >> tok)) throw std::runtime_error("checkpoint: unexpected end of file");
    char* end = nullptr;
    const double x = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        throw std::runtime_error("checkpoint: bad number token '" + tok + "'");
    }
    return x;
}

}  // namespace

void save_checkpoint(const MlpParams& params, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path.string());
    out << "oscnet-mlp 1\n";
    out << "activation " << to_string(params.activation) << "\n";
    out << "widths";
    for (int w : params.widths()) out << ' ' << w;
    out << "\n";
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        const auto& layer = params.layers[l];
        out << "layer " << l << ' ' << layer.weights.rows() << ' ' << layer.weights.cols()
            << "\n";
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
                if (c > 0) out << ' ';
                write_double(out, layer.weights(r, c));
            }
            out << "\n";
        }
        for (Eigen::Index i = 0; i < layer.biases.size(); ++i) {
            if (i > 0) out << ' ';
            write_double(out, layer.biases(i));
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("checkpoint write failed: " + path.string());
}

MlpParams load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path.string());
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "oscnet-mlp" || version != 1) {
        throw std::runtime_error("checkpoint: bad header in " + path.string());
    }
    std::string key, act_name;
    in >> key >> act_name;
    if (key != "activation") throw std::runtime_error("checkpoint: expected activation line");
    MlpParams params;
    params.activation = activation_from_string(act_name);

    in >> key;
    if (key != "widths") throw std::runtime_error("checkpoint: expected widths line");
    std::string line;
    std::getline(in, line);
    std::istringstream widths_in(line);
    std::vector<int> widths;
    int w;
    while (widths_in >> w) widths.push_back(w);
    if (widths.size() < 2) throw std::runtime_error("checkpoint: bad widths");

    for (std::size_t l = 1; l < widths.size(); ++l) {
        std::size_t index;
        Eigen::Index rows, cols;
        in >> key >> index >> rows >> cols;
        if (key != "layer" || index != l - 1 || rows != widths[l] || cols != widths[l - 1]) {
            throw std::runtime_error("checkpoint: bad layer header");
        }
        LayerParams layer;
        layer.weights.resize(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) layer.weights(r, c) = read_double(in);
        }
        layer.biases.resize(rows);
        for (Eigen::Index i = 0; i < rows; ++i) layer.biases(i) = read_double(in);
        params.layers.push_back(std::move(layer));
    }
    return params;
}

}  // namespace oscnet
