#include "wedge/scaling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wedge {

const char* to_string(Edge e) { return e == Edge::max ? "max" : "min"; }

const char* to_string(ScalingMode m) {
    switch (m) {
    case ScalingMode::paper: return "paper";
    case ScalingMode::adjusted: return "adjusted";
    case ScalingMode::fitted: return "fitted";
    }
    return "?";
}

ScalingParams edge_params(double n_eff, double p_eff, Edge edge) {
    if (!(p_eff >= 0.5) || n_eff < p_eff)
        throw std::invalid_argument("edge_params: need 0 < p_eff <= n_eff");
    const double gamma = std::sqrt(p_eff / n_eff);
    const double sgn = (edge == Edge::max) ? 1.0 : -1.0;
    const double one = 1.0 + sgn * gamma;
    if (edge == Edge::min && one <= 1e-12)
        throw std::invalid_argument(
            "edge_params: degenerate edge (p = n makes mu_- = sigma_- = 0)");
    ScalingParams out;
    out.gamma = gamma;
    out.edge = edge;
    out.mode = ScalingMode::paper;
    out.nu = static_cast<int>(std::lround(n_eff - p_eff));
    out.mu = one * one * n_eff;
    out.sigma =
        sgn * std::pow(one, 4.0 / 3.0) / std::cbrt(gamma) * std::cbrt(n_eff);
    return out;
}

ScalingParams johnstone_params(int n, int p, Edge edge, ScalingMode mode) {
    if (p < 1 || n < p)
        throw std::invalid_argument("johnstone_params: need 1 <= p <= n");
    const bool adjusted = (mode == ScalingMode::adjusted);
    ScalingParams out = edge_params(adjusted ? n - 0.5 : n,
                                    adjusted ? p - 0.5 : p, edge);
    out.mode = mode;
    out.nu = n - p;
    return out;
}

double center_rescale(double x, const ScalingParams& params, double lambda_bar) {
    if (params.sigma == 0.0)
        throw std::invalid_argument("center_rescale: sigma = 0");
    return (x - params.mu * lambda_bar) / (params.sigma * lambda_bar);
}

double center_rescale_inverse(double chi, const ScalingParams& params,
                              double lambda_bar) {
    if (params.sigma == 0.0)
        throw std::invalid_argument("center_rescale_inverse: sigma = 0");
    return params.mu * lambda_bar + params.sigma * lambda_bar * chi;
}

ConditionReport variance_condition(const EmpiricalSpectrum& spectrum, int n) {
    const int p = spectrum.p();
    if (p < 1 || n < p)
        throw std::invalid_argument("variance_condition: need 1 <= p <= n");
    ConditionReport r;
    r.var_s = spectrum.sample_variance();
    const double gamma = std::sqrt(static_cast<double>(p) / n);
    r.n23_var = std::pow(static_cast<double>(n), 2.0 / 3.0) * r.var_s;
    if (r.var_s <= 0.0 || p < 2) {
        r.alpha_eff = std::numeric_limits<double>::infinity();
        r.decay_factor = 0.0;
        r.pass = true;
        return r;
    }
    r.alpha_eff = -std::log(r.var_s) / std::log(static_cast<double>(p));
    r.decay_factor = std::pow(gamma, 2.0 * r.alpha_eff - 1.0) *
                     std::pow(1.0 + gamma, 2.0 / 3.0) *
                     std::pow(static_cast<double>(n), 2.0 / 3.0 - r.alpha_eff);
    r.pass = r.alpha_eff > 2.0 / 3.0;
    return r;
}

double first_order_correction(const std::function<double(double)>& e0,
                              const EmpiricalSpectrum& spectrum, double t) {
    // tr Lambda1 / p^alpha = sum_k (Lambda_k - lambda_bar), exactly; this
    // form avoids the 0 * inf ambiguity of zero-variance spectra.
    double dev_sum = 0.0;
    double abs_sum = 0.0;
    for (double l : spectrum.lambdas) {
        dev_sum += l - spectrum.lambda_bar;
        abs_sum += std::abs(l);
    }
    const double prefactor =
        dev_sum / (static_cast<double>(spectrum.p()) * spectrum.lambda_bar);
    if (std::abs(dev_sum) <= 1e-14 * abs_sum) return e0(t);
    const double h = 1e-5 * std::max(std::abs(t), 1.0);
    const double deriv = (e0(t + h) - e0(t - h)) / (2.0 * h);
    return e0(t) - prefactor * t * deriv;
}

} // namespace wedge
