// Correlated Wishart ensembles for beta = 1, 2, 4: population spectra, data
// matrix sampling W = Lambda^{1/2} G, and extreme eigenvalues of W W^dagger.
//
// The model is basis invariant, so a diagonal population matrix loses no
// generality for spectral observables.  Entry variances are chosen so that
// E|W_ij|^2 = Lambda_i with |.|^2 summing all real components: Lambda_i per
// real entry (beta = 1), Lambda_i/2 per real/imaginary part (beta = 2),
// Lambda_i/4 per quaternion component (beta = 4).  Quaternions are stored in
// the standard 2x2 complex embedding [[z, w], [-conj(w), conj(z)]], so the
// beta = 4 data matrix is a 2p x 2n complex array whose W W^dagger spectrum
// is doubly degenerate (Kramers pairs).

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "wedge/rng.hpp"

namespace wedge {

struct SpectrumSpec {
    enum class Kind { identity, explicit_list, uniform };

    Kind kind = Kind::identity;
    std::vector<double> values;      // explicit_list
    double mean = 1.0;               // uniform: <Lambda>_s
    double var_exponent = 1.75;      // uniform: Var_s(Lambda) = p^{-alpha}

    static SpectrumSpec identity() { return {}; }
    static SpectrumSpec explicit_list(std::vector<double> v) {
        SpectrumSpec s;
        s.kind = Kind::explicit_list;
        s.values = std::move(v);
        return s;
    }
    static SpectrumSpec uniform(double mean, double var_exponent) {
        SpectrumSpec s;
        s.kind = Kind::uniform;
        s.mean = mean;
        s.var_exponent = var_exponent;
        return s;
    }
};

// Population eigenvalues Lambda_k, their mean, and the decomposition
// Lambda_k = lambda_bar + p^{-alpha} lambda1_k.  alpha is +infinity for
// zero-variance spectra (the decomposition is then trivial).
struct EmpiricalSpectrum {
    std::vector<double> lambdas;
    double lambda_bar = 1.0;
    std::vector<double> lambda1;
    double alpha = 0.0;

    int p() const { return static_cast<int>(lambdas.size()); }
    double sample_variance() const;
    double trace_lambda1() const;
};

struct EnsembleConfig {
    int beta = 2;
    int p = 1;
    int n = 1;
    SpectrumSpec spectrum;
    std::uint64_t seed = 0;

    void validate() const; // beta in {1,2,4}, 1 <= p <= n
    // Degeneracy constants: gamma2 = 1 (beta = 1,2) or 2 (beta = 4), and
    // gamma1 = 2 gamma2 / beta.
    int gamma2() const { return beta == 4 ? 2 : 1; }
    double gamma1() const { return 2.0 * gamma2() / beta; }
};

struct DataMatrix {
    int beta = 2;
    // beta = 1: real p x n; beta = 2: complex p x n; beta = 4: complex 2p x 2n.
    std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> entries;

    int p() const;
    int n() const;
};

using CovMatrix = std::variant<Eigen::MatrixXd, Eigen::MatrixXcd>;

struct Extremes {
    double x_max = 0.0;
    double x_min = 0.0;
};

// Draw the population spectrum.  Uniform spectra are recentred to the exact
// mean and rescaled to the exact target variance p^{-alpha}; all entries must
// stay positive, which fails only if the requested variance is too large
// (half-width a = sqrt(3 p^{-alpha}) >= mean).
EmpiricalSpectrum build_spectrum(const SpectrumSpec& spec, int p,
                                 RandomStream& rng);

// Decomposition around an explicit reference mean, for expansion studies
// where the deviations are not required to average out (tr lambda1 != 0).
// Spectra from build_spectrum always carry lambda_bar = exact sample mean.
EmpiricalSpectrum decompose_spectrum(std::vector<double> lambdas,
                                     double lambda_bar, double alpha);

DataMatrix sample_data_matrix(const EnsembleConfig& config,
                              const EmpiricalSpectrum& spectrum,
                              RandomStream& rng);

// W W^dagger (unnormalized); exactly Hermitian by construction.
CovMatrix wishart_matrix(const DataMatrix& w);

// Ascending distinct eigenvalues of W W^dagger; beta = 4 Kramers pairs are
// collapsed (and their degeneracy verified) first.
std::vector<double> distinct_eigenvalues(const CovMatrix& cov, int beta);

Extremes extreme_eigenvalues(const DataMatrix& w);

} // namespace wedge
