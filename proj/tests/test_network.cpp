#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "helpers.hpp"
#include "oscnet/network.hpp"

using namespace oscnet;
using oscnet::testing::central_diff;
using oscnet::testing::close;
using oscnet::testing::uniform;

TEST_CASE("init_params default architecture shapes") {
    const MlpParams params = init_params({1, 128, 128, 128, 1}, ActivationKind::Asu, 42);
    REQUIRE(params.layers.size() == 4);
    CHECK(params.layers[0].weights.rows() == 128);
    CHECK(params.layers[0].weights.cols() == 1);
    CHECK(params.layers[1].weights.rows() == 128);
    CHECK(params.layers[1].weights.cols() == 128);
    CHECK(params.layers[3].weights.rows() == 1);
    CHECK(params.layers[3].weights.cols() == 128);
    CHECK(params.widths() == std::vector<int>{1, 128, 128, 128, 1});
    CHECK(params.parameter_count() == 128 + 128 + 128 * 128 + 128 + 128 * 128 + 128 + 128 + 1);
}

TEST_CASE("init_params Glorot bound and zero biases for [1,1]") {
    const MlpParams params = init_params({1, 1}, ActivationKind::Tanh, 7);
    REQUIRE(params.layers.size() == 1);
    CHECK(std::abs(params.layers[0].weights(0, 0)) <= std::sqrt(3.0));
    CHECK(params.layers[0].biases(0) == 0.0);
}

TEST_CASE("init_params is seed-deterministic") {
    const MlpParams a = init_params({1, 16, 16, 1}, ActivationKind::Gcu, 99);
    const MlpParams b = init_params({1, 16, 16, 1}, ActivationKind::Gcu, 99);
    const MlpParams c = init_params({1, 16, 16, 1}, ActivationKind::Gcu, 100);
    for (std::size_t l = 0; l < a.layers.size(); ++l) {
        CHECK((a.layers[l].weights.array() == b.layers[l].weights.array()).all());
        CHECK((a.layers[l].biases.array() == b.layers[l].biases.array()).all());
    }
    CHECK(!(a.layers[0].weights.array() == c.layers[0].weights.array()).all());
}

TEST_CASE("init_params rejects bad widths") {
    CHECK_THROWS_AS(init_params({}, ActivationKind::Asu, 0), std::invalid_argument);
    CHECK_THROWS_AS(init_params({1}, ActivationKind::Asu, 0), std::invalid_argument);
    CHECK_THROWS_AS(init_params({1, 0, 1}, ActivationKind::Asu, 0), std::invalid_argument);
    CHECK_THROWS_AS(init_params({2, 8, 1}, ActivationKind::Asu, 0), std::invalid_argument);
    CHECK_THROWS_AS(init_params({1, 8, 3}, ActivationKind::Asu, 0), std::invalid_argument);
}

TEST_CASE("forward_jet of a bare affine layer") {
    MlpParams params = init_params({1, 1}, ActivationKind::Sine, 0);
    params.layers[0].weights(0, 0) = 2.5;
    params.layers[0].biases(0) = -1.0;
    const Jet2 out = forward_jet(params, 3.0);
    CHECK(out.v == doctest::Approx(2.5 * 3.0 - 1.0));
    CHECK(out.d1 == 2.5);
    CHECK(out.d2 == 0.0);
}

TEST_CASE("forward_jet composes affine and sine jets") {
    MlpParams params = init_params({1, 1, 1}, ActivationKind::Sine, 0);
    params.layers[0].weights(0, 0) = 1.0;
    params.layers[0].biases(0) = 0.0;
    params.layers[1].weights(0, 0) = 1.0;
    params.layers[1].biases(0) = 0.0;
    for (double t : {-1.0, 0.0, 0.4, 2.0}) {
        const Jet2 out = forward_jet(params, t);
        CHECK(out.v == doctest::Approx(std::sin(t)));
        CHECK(out.d1 == doctest::Approx(std::cos(t)));
        CHECK(out.d2 == doctest::Approx(-std::sin(t)));
    }
}

TEST_CASE("jet slots match finite differences of the value slot") {
    const MlpParams params = init_params({1, 8, 1}, ActivationKind::Asu, 7);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const double t = uniform(rng, 0.0, 10.0);
        const Jet2 out = forward_jet(params, t);
        const auto value = [&](double x) { return forward_jet(params, x).v; };
        const auto d1 = [&](double x) { return forward_jet(params, x).d1; };
        CHECK(close(central_diff(value, t), out.d1, 1e-5, 1e-7));
        CHECK(close(central_diff(d1, t), out.d2, 1e-5, 1e-7));
    }
}

TEST_CASE("identity activation hook collapses the network to one affine map") {
    const MlpParams params = init_params({1, 8, 8, 1}, ActivationKind::Tanh, 3);
    const auto identity = [](ActivationKind, const Jet2& a) { return a; };
    const Jet2 y0 = forward_jet_with(params, 0.0, identity);
    const Jet2 y1 = forward_jet_with(params, 1.0, identity);
    const Jet2 y2 = forward_jet_with(params, 2.0, identity);
    CHECK(y2.v - y1.v == doctest::Approx(y1.v - y0.v));  // value is affine in t
    CHECK(y0.d2 == doctest::Approx(0.0));
    CHECK(y1.d2 == doctest::Approx(0.0));
    CHECK(y0.d1 == doctest::Approx(y1.v - y0.v));
}

TEST_CASE("checkpoint round-trip is lossless") {
    const MlpParams params = init_params({1, 8, 8, 1}, ActivationKind::Mish, 3);
    const auto path = std::filesystem::temp_directory_path() / "oscnet_ckpt_test";
    save_checkpoint(params, path);
    const MlpParams loaded = load_checkpoint(path);
    CHECK(loaded.activation == params.activation);
    REQUIRE(loaded.layers.size() == params.layers.size());
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        CHECK((loaded.layers[l].weights.array() == params.layers[l].weights.array()).all());
        CHECK((loaded.layers[l].biases.array() == params.layers[l].biases.array()).all());
    }
    std::filesystem::remove(path);
}
