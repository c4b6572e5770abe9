// Soft-edge centering and rescaling for Wishart extremes,
//
//   mu_pm = (1 pm gamma)^2 n,   sigma_pm = pm (1 pm gamma)^{4/3} gamma^{-1/3} n^{1/3},
//
// with gamma = sqrt(p/n), plus the variance-decay diagnostic for empirical
// spectra and the first-order gap-probability correction for spectra whose
// deviations do not average out.

#pragma once

#include <functional>

#include "wedge/ensemble.hpp"

namespace wedge {

enum class Edge { max, min };

// `paper` evaluates the formulas verbatim; `adjusted` substitutes
// n -> n - 1/2, p -> p - 1/2 throughout, a finite-size refinement that leaves
// the limit unchanged; `fitted` starts from `paper` and lets the harness fit
// bounded location/scale corrections afterwards.
enum class ScalingMode { paper, adjusted, fitted };

const char* to_string(Edge e);
const char* to_string(ScalingMode m);

struct ScalingParams {
    double gamma = 0.0;
    Edge edge = Edge::max;
    double mu = 0.0;
    double sigma = 0.0;
    int nu = 0; // n - p
    ScalingMode mode = ScalingMode::paper;
};

// Raw formulas at (possibly non-integer) effective dimensions; nu is rounded
// from the unshifted difference.  Throws on p_eff > n_eff and on the
// degenerate min edge (gamma = 1: mu_- = sigma_- = 0).
ScalingParams edge_params(double n_eff, double p_eff, Edge edge);

// Throws std::invalid_argument for p > n and a degenerate-edge error when
// edge = min and gamma = 1 (hard edge: mu_- = sigma_- = 0).
ScalingParams johnstone_params(int n, int p, Edge edge, ScalingMode mode);

// chi = (x - mu * lambda_bar) / (sigma * lambda_bar)
double center_rescale(double x, const ScalingParams& params, double lambda_bar);
double center_rescale_inverse(double chi, const ScalingParams& params,
                              double lambda_bar);

struct ConditionReport {
    double var_s = 0.0;     // sample variance of the spectrum
    double alpha_eff = 0.0; // Var_s = p^{-alpha_eff}; +inf for zero variance
    double decay_factor = 0.0; // gamma^{2a-1} (1+gamma)^{2/3} n^{2/3-a}
    double n23_var = 0.0;      // n^{2/3} Var_s
    bool pass = false;         // alpha_eff > 2/3
};

ConditionReport variance_condition(const EmpiricalSpectrum& spectrum, int n);

// E0(t) - (tr Lambda1 / (p^alpha p lambda_bar)) t E0'(t), the first-order
// expansion of the gap probability around the mean spectrum.  E0' is taken
// by central differences with relative step 1e-5.  Mean-centred spectra
// (tr Lambda1 = 0) return E0(t) untouched.
double first_order_correction(const std::function<double(double)>& e0,
                              const EmpiricalSpectrum& spectrum, double t);

} // namespace wedge
