#pragma once

#include <cmath>
#include <functional>
#include <random>

namespace oscnet::testing {

inline double central_diff(const std::function<double(double)>& f, double x,
                           double h = 1e-4) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// |got - want| <= max(rtol * |want|, atol)
inline bool close(double got, double want, double rtol, double atol) {
    return std::abs(got - want) <= std::max(rtol * std::abs(want), atol);
}

// Deterministic uniform in [lo, hi) from a seeded generator.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace oscnet::testing
