#include "oscnet/autodiff.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oscnet {

GradientSet zeros_like(const MlpParams& params) {
    GradientSet grads;
    grads.layers.reserve(params.layers.size());
    for (const auto& layer : params.layers) {
        grads.layers.push_back({Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()),
                                Eigen::VectorXd::Zero(layer.biases.size())});
    }
    return grads;
}

namespace {

using Eigen::MatrixXd;

// Batched forward record. Column i carries the jet state of point i; the
// three slot matrices hold value, d/dt and d2/dt2 channels.
struct LayerRecord {
    MatrixXd in_v, in_d1, in_d2;  // inputs of the affine map
    MatrixXd a_d1, a_d2;          // pre-activation derivative slots (hidden layers)
    MatrixXd f1, f2, f3;          // activation derivatives at a_v (hidden layers)
};

struct ForwardRecord {
    std::vector<LayerRecord> layers;
    Eigen::RowVectorXd out_v, out_d1, out_d2;  // network output jets
};

ForwardRecord forward_batched(const MlpParams& params, std::span<const double> points) {
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    const std::size_t n_layers = params.layers.size();

    MatrixXd hv(1, n), hd1(1, n), hd2(1, n);
    for (Eigen::Index i = 0; i < n; ++i) hv(0, i) = points[i];
    hd1.setOnes();
    hd2.setZero();

    ForwardRecord rec;
    rec.layers.resize(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
        const auto& layer = params.layers[l];
        auto& lr = rec.layers[l];
        lr.in_v = std::move(hv);
        lr.in_d1 = std::move(hd1);
        lr.in_d2 = std::move(hd2);

        MatrixXd av = (layer.weights * lr.in_v).colwise() + layer.biases;
        MatrixXd ad1 = layer.weights * lr.in_d1;
        MatrixXd ad2 = layer.weights * lr.in_d2;

        if (l + 1 == n_layers) {
            rec.out_v = av.row(0);
            rec.out_d1 = ad1.row(0);
            rec.out_d2 = ad2.row(0);
            break;
        }

        const Eigen::Index rows = av.rows();
        lr.f1.resize(rows, n);
        lr.f2.resize(rows, n);
        lr.f3.resize(rows, n);
        hv.resize(rows, n);
        for (Eigen::Index c = 0; c < n; ++c) {
            for (Eigen::Index r = 0; r < rows; ++r) {
                const ActDerivs d = act_derivs(params.activation, av(r, c));
                hv(r, c) = d.f;
                lr.f1(r, c) = d.f1;
                lr.f2(r, c) = d.f2;
                lr.f3(r, c) = d.f3;
            }
        }
        hd1 = lr.f1.array() * ad1.array();
        hd2 = lr.f2.array() * ad1.array().square() + lr.f1.array() * ad2.array();
        lr.a_d1 = std::move(ad1);
        lr.a_d2 = std::move(ad2);
    }
    return rec;
}

// Partial derivatives of the trial jet slots with respect to the network
// output jet at one point.
struct TrialPartials {
    double uv_nv;                       // d u~ / d N
    double ud1_nv, ud1_nd1;             // d u~' / d {N, N'}
    double ud2_nv, ud2_nd1, ud2_nd2;    // d u~'' / d {N, N', N''}
};

TrialPartials trial_partials(TrialTransformKind kind, const OscillatorProblem& problem,
                             double t) {
    const double dt = t - problem.t0;
    const double e = std::exp(-dt);
    const double s = -std::expm1(-dt);
    const double s1 = e;
    const double s2 = -e;
    if (kind == TrialTransformKind::FirstOrder) {
        return {s, s1, s, s2, 2.0 * s1, s};
    }
    return {s * s, 2.0 * s * s1, s * s, 2.0 * (s1 * s1 + s * s2), 4.0 * s * s1, s * s};
}

void check_points(const OscillatorProblem& problem, std::span<const double> points) {
    if (points.empty()) throw std::invalid_argument("collocation points must be non-empty");
    for (double t : points) {
        if (!(t >= problem.t0 && t <= problem.t_end)) {
            throw std::invalid_argument("collocation point " + std::to_string(t) +
                                        " outside [t0, t_end]");
        }
    }
}

// Residuals of the trial solution at every point. Sequential mean keeps the
// result deterministic and shared between the loss-only and gradient paths.
double residual_mean_square(const OscillatorProblem& problem, TrialTransformKind transform,
                            const ForwardRecord& rec, std::span<const double> points,
                            std::vector<double>& residuals, std::vector<Jet2>& trials) {
    const std::size_t n = points.size();
    residuals.resize(n);
    trials.resize(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Jet2 net{rec.out_v(static_cast<Eigen::Index>(i)),
                       rec.out_d1(static_cast<Eigen::Index>(i)),
                       rec.out_d2(static_cast<Eigen::Index>(i))};
        trials[i] = trial_jet(transform, problem, net, points[i]);
        residuals[i] = residual(problem, trials[i]);
        if (!std::isfinite(residuals[i])) {
            throw std::runtime_error("non-finite residual at collocation point t = " +
                                     std::to_string(points[i]));
        }
        sum += residuals[i] * residuals[i];
    }
    return sum / static_cast<double>(n);
}

double initial_velocity(const OscillatorProblem& problem, TrialTransformKind transform,
                        const ForwardRecord& rec) {
    const Jet2 net{rec.out_v(0), rec.out_d1(0), rec.out_d2(0)};
    return trial_jet(transform, problem, net, problem.t0).d1;
}

// Reverse sweep from output-jet adjoints (one column per point) into grads.
void backward_batched(const MlpParams& params, const ForwardRecord& rec,
                      const Eigen::RowVectorXd& g_out_v, const Eigen::RowVectorXd& g_out_d1,
                      const Eigen::RowVectorXd& g_out_d2, GradientSet& grads) {
    MatrixXd gv = g_out_v;
    MatrixXd gd1 = g_out_d1;
    MatrixXd gd2 = g_out_d2;

    for (std::size_t l = params.layers.size(); l-- > 0;) {
        const auto& layer = params.layers[l];
        const auto& lr = rec.layers[l];

        grads.layers[l].weights +=
            gv * lr.in_v.transpose() + gd1 * lr.in_d1.transpose() + gd2 * lr.in_d2.transpose();
        grads.layers[l].biases += gv.rowwise().sum();

        if (l == 0) break;

        MatrixXd ghv = layer.weights.transpose() * gv;
        MatrixXd ghd1 = layer.weights.transpose() * gd1;
        MatrixXd ghd2 = layer.weights.transpose() * gd2;

        // Through the activation of layer l-1:
        //   h.v  = f(a.v)
        //   h.d1 = f'(a.v) a.d1
        //   h.d2 = f''(a.v) a.d1^2 + f'(a.v) a.d2
        const auto& pl = rec.layers[l - 1];
        gv = ghv.array() * pl.f1.array() + ghd1.array() * pl.f2.array() * pl.a_d1.array() +
             ghd2.array() *
                 (pl.f3.array() * pl.a_d1.array().square() + pl.f2.array() * pl.a_d2.array());
        gd1 = ghd1.array() * pl.f1.array() +
              ghd2.array() * 2.0 * pl.f2.array() * pl.a_d1.array();
        gd2 = ghd2.array() * pl.f1.array();
    }
}

}  // namespace

double collocation_loss(const MlpParams& params, const OscillatorProblem& problem,
                        TrialTransformKind transform, std::span<const double> points,
                        double ic_penalty_lambda) {
    check_points(problem, points);
    const ForwardRecord rec = forward_batched(params, points);
    std::vector<double> residuals;
    std::vector<Jet2> trials;
    double loss = residual_mean_square(problem, transform, rec, points, residuals, trials);
    if (ic_penalty_lambda > 0.0) {
        const double t0s[1] = {problem.t0};
        const ForwardRecord rec0 = forward_batched(params, t0s);
        const double v0 = initial_velocity(problem, transform, rec0);
        loss += ic_penalty_lambda * v0 * v0;
    }
    return loss;
}

LossAndGrad loss_and_grad(const MlpParams& params, const OscillatorProblem& problem,
                          TrialTransformKind transform, std::span<const double> points,
                          double ic_penalty_lambda) {
    check_points(problem, points);
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    const ForwardRecord rec = forward_batched(params, points);

    std::vector<double> residuals;
    std::vector<Jet2> trials;
    double loss = residual_mean_square(problem, transform, rec, points, residuals, trials);

    // dLoss/dr_i = 2 r_i / n, then residual and trial chain to the output jet.
    Eigen::RowVectorXd g_out_v(n), g_out_d1(n), g_out_d2(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double gr = 2.0 * residuals[i] / static_cast<double>(n);
        const Jet2& u = trials[i];
        const double u2 = u.v * u.v;
        const double dg_du = 2.0 * problem.a[1] * u.v + 4.0 * problem.a[2] * u.v * u2;
        const double dp_du =
            problem.a[3] + u2 * (3.0 * problem.a[4] +
                                 u2 * (5.0 * problem.a[5] + u2 * 7.0 * problem.a[6]));
        const double gu_v = gr * (dg_du * u.d2 + dp_du);
        const double gu_d2 = gr * problem.inertia(u.v);

        const TrialPartials tp = trial_partials(transform, problem, points[i]);
        g_out_v(i) = gu_v * tp.uv_nv + gu_d2 * tp.ud2_nv;
        g_out_d1(i) = gu_d2 * tp.ud2_nd1;
        g_out_d2(i) = gu_d2 * tp.ud2_nd2;
    }

    GradientSet grads = zeros_like(params);
    backward_batched(params, rec, g_out_v, g_out_d1, g_out_d2, grads);

    if (ic_penalty_lambda > 0.0) {
        const double t0s[1] = {problem.t0};
        const ForwardRecord rec0 = forward_batched(params, t0s);
        const double v0 = initial_velocity(problem, transform, rec0);
        loss += ic_penalty_lambda * v0 * v0;

        const double gv0 = 2.0 * ic_penalty_lambda * v0;
        const TrialPartials tp = trial_partials(transform, problem, problem.t0);
        Eigen::RowVectorXd pv(1), pd1(1), pd2(1);
        pv(0) = gv0 * tp.ud1_nv;
        pd1(0) = gv0 * tp.ud1_nd1;
        pd2(0) = 0.0;
        backward_batched(params, rec0, pv, pd1, pd2, grads);
    }

    if (!std::isfinite(loss)) {
        throw std::runtime_error("non-finite loss over collocation set starting at t = " +
                                 std::to_string(points[0]));
    }
    for (std::size_t l = 0; l < grads.layers.size(); ++l) {
        if (!grads.layers[l].weights.allFinite() || !grads.layers[l].biases.allFinite()) {
            throw std::runtime_error("non-finite gradient in layer " + std::to_string(l));
        }
    }
    return {loss, std::move(grads)};
}

}  // namespace oscnet
