#pragma once

#include <string>
#include <string_view>

namespace oscnet {

// The five activation functions under comparison. Hidden layers apply one of
// these elementwise; the output layer is always linear.
enum class ActivationKind { Tanh, Mish, Sine, Gcu, Asu };

// Lowercase names used in config files and CLI flags: "tanh", "mish",
// "sine", "gcu", "asu".
std::string to_string(ActivationKind kind);
ActivationKind activation_from_string(std::string_view name);

// Second-order jet: a value together with its first and second derivatives
// with respect to the scalar time input.
struct Jet2 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

// Value and first three derivatives of an activation at one point.
struct ActDerivs {
    double f = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
};

// order-th derivative of the activation at z, order in 0..3.
// Throws std::invalid_argument for any other order.
double act_eval(ActivationKind kind, double z, int order);

// All derivatives through order 3 in one evaluation.
ActDerivs act_derivs(ActivationKind kind, double z);

// Order-2 chain rule: (f(a.v), f'(a.v)*a.d1, f''(a.v)*a.d1^2 + f'(a.v)*a.d2).
Jet2 act_jet(ActivationKind kind, const Jet2& a);

// Numerically stable softplus, ln(1 + e^z).
double softplus(double z);

}  // namespace oscnet
