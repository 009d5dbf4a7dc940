#include "oscnet/activation.hpp"

#include <cmath>
#include <stdexcept>

namespace oscnet {

std::string to_string(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::Tanh: return "tanh";
        case ActivationKind::Mish: return "mish";
        case ActivationKind::Sine: return "sine";
        case ActivationKind::Gcu: return "gcu";
        case ActivationKind::Asu: return "asu";
    }
    throw std::logic_error("unreachable activation kind");
}

ActivationKind activation_from_string(std::string_view name) {
    if (name == "tanh") return ActivationKind::Tanh;
    if (name == "mish") return ActivationKind::Mish;
    if (name == "sine") return ActivationKind::Sine;
    if (name == "gcu") return ActivationKind::Gcu;
    if (name == "asu") return ActivationKind::Asu;
    throw std::invalid_argument("unknown activation name: " + std::string(name));
}

double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

namespace {

ActDerivs tanh_derivs(double z) {
    const double t = std::tanh(z);
    const double a = 1.0 - t * t;
    ActDerivs d;
    d.f = t;
    d.f1 = a;
    d.f2 = -2.0 * t * a;
    d.f3 = -2.0 * a * (1.0 - 3.0 * t * t);
    return d;
}

// Mish(z) = z * tanh(softplus(z)). Derivatives assembled by nesting the
// chain rule through softplus and tanh rather than one flat formula.
ActDerivs mish_derivs(double z) {
    const double s = softplus(z);
    const double sig = 1.0 / (1.0 + std::exp(-z));  // s' = sigmoid(z)
    const double s1 = sig;
    const double s2 = sig * (1.0 - sig);
    const double s3 = s2 * (1.0 - 2.0 * sig);

    const double t = std::tanh(s);
    const double a = 1.0 - t * t;
    // g(z) = tanh(softplus(z))
    const double g = t;
    const double g1 = a * s1;
    const double g2 = -2.0 * t * a * s1 * s1 + a * s2;
    const double g3 = -2.0 * a * s1 * s1 * s1 * (a - 2.0 * t * t)
                      - 6.0 * t * a * s1 * s2 + a * s3;

    ActDerivs d;
    d.f = z * g;
    d.f1 = g + z * g1;
    d.f2 = 2.0 * g1 + z * g2;
    d.f3 = 3.0 * g2 + z * g3;
    return d;
}

ActDerivs sine_derivs(double z) {
    const double s = std::sin(z);
    const double c = std::cos(z);
    return {s, c, -s, -c};
}

ActDerivs gcu_derivs(double z) {
    const double s = std::sin(z);
    const double c = std::cos(z);
    ActDerivs d;
    d.f = z * c;
    d.f1 = c - z * s;
    d.f2 = -2.0 * s - z * c;
    d.f3 = -3.0 * c + z * s;
    return d;
}

ActDerivs asu_derivs(double z) {
    const double s = std::sin(z);
    const double c = std::cos(z);
    ActDerivs d;
    d.f = z * s;
    d.f1 = s + z * c;
    d.f2 = 2.0 * c - z * s;
    d.f3 = -3.0 * s - z * c;
    return d;
}

}  // namespace

ActDerivs act_derivs(ActivationKind kind, double z) {
    switch (kind) {
        case ActivationKind::Tanh: return tanh_derivs(z);
        case ActivationKind::Mish: return mish_derivs(z);
        case ActivationKind::Sine: return sine_derivs(z);
        case ActivationKind::Gcu: return gcu_derivs(z);
        case ActivationKind::Asu: return asu_derivs(z);
    }
    throw std::logic_error("unreachable activation kind");
}

double act_eval(ActivationKind kind, double z, int order) {
    if (order < 0 || order > 3) {
        throw std::invalid_argument("act_eval: derivative order must be in 0..3, got " +
                                    std::to_string(order));
    }
    const ActDerivs d = act_derivs(kind, z);
    switch (order) {
        case 0: return d.f;
        case 1: return d.f1;
        case 2: return d.f2;
        default: return d.f3;
    }
}

Jet2 act_jet(ActivationKind kind, const Jet2& a) {
    const ActDerivs d = act_derivs(kind, a.v);
    return {d.f, d.f1 * a.d1, d.f2 * a.d1 * a.d1 + d.f1 * a.d2};
}

}  // namespace oscnet
