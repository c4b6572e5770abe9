#include "wedge/ensemble.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "wedge/errors.hpp"

namespace wedge {

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double var_of(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size());
}

EmpiricalSpectrum finish_spectrum(std::vector<double> lambdas) {
    EmpiricalSpectrum out;
    out.lambdas = std::move(lambdas);
    const int p = out.p();
    out.lambda_bar = mean_of(out.lambdas);
    const double var = var_of(out.lambdas, out.lambda_bar);
    if (var == 0.0 || p < 2) {
        out.alpha = std::numeric_limits<double>::infinity();
        out.lambda1.assign(p, 0.0);
        return out;
    }
    out.alpha = -std::log(var) / std::log(static_cast<double>(p));
    const double scale = std::pow(static_cast<double>(p), out.alpha);
    out.lambda1.resize(p);
    for (int k = 0; k < p; ++k)
        out.lambda1[k] = (out.lambdas[k] - out.lambda_bar) * scale;
    return out;
}

} // namespace

double EmpiricalSpectrum::sample_variance() const {
    return var_of(lambdas, mean_of(lambdas));
}

double EmpiricalSpectrum::trace_lambda1() const {
    double s = 0.0;
    for (double x : lambda1) s += x;
    return s;
}

void EnsembleConfig::validate() const {
    if (beta != 1 && beta != 2 && beta != 4)
        throw std::invalid_argument("EnsembleConfig: beta must be 1, 2 or 4");
    if (p < 1 || n < p)
        throw std::invalid_argument("EnsembleConfig: need 1 <= p <= n");
}

int DataMatrix::p() const {
    const int rows = std::visit([](const auto& m) { return static_cast<int>(m.rows()); },
                                entries);
    return beta == 4 ? rows / 2 : rows;
}

int DataMatrix::n() const {
    const int cols = std::visit([](const auto& m) { return static_cast<int>(m.cols()); },
                                entries);
    return beta == 4 ? cols / 2 : cols;
}

EmpiricalSpectrum build_spectrum(const SpectrumSpec& spec, int p,
                                 RandomStream& rng) {
    if (p < 1) throw std::invalid_argument("build_spectrum: p must be >= 1");
    switch (spec.kind) {
    case SpectrumSpec::Kind::identity:
        return finish_spectrum(std::vector<double>(p, 1.0));
    case SpectrumSpec::Kind::explicit_list: {
        if (static_cast<int>(spec.values.size()) != p)
            throw std::invalid_argument("build_spectrum: explicit list size != p");
        for (double v : spec.values)
            if (!(v > 0.0))
                throw std::invalid_argument(
                    "build_spectrum: eigenvalues must be positive");
        return finish_spectrum(spec.values);
    }
    case SpectrumSpec::Kind::uniform: {
        if (!(spec.mean > 0.0) || !(spec.var_exponent > 0.0))
            throw std::invalid_argument(
                "build_spectrum: uniform spectrum needs mean > 0, alpha > 0");
        const double target =
            std::pow(static_cast<double>(p), -spec.var_exponent);
        const double a = std::sqrt(3.0 * target);
        if (a >= spec.mean)
            throw std::invalid_argument(
                "build_spectrum: target variance too large, positivity would "
                "fail (half-width >= mean)");
        if (p == 1) return finish_spectrum({spec.mean});
        std::vector<double> draw(p);
        for (int k = 0; k < p; ++k)
            draw[k] = rng.uniform(spec.mean - a, spec.mean + a);
        // Recentre to the exact mean and rescale to the exact target
        // variance; the ensemble constraints hold per realization.
        const double m = mean_of(draw);
        double var = 0.0;
        for (int k = 0; k < p; ++k) {
            draw[k] -= m;
            var += draw[k] * draw[k];
        }
        var /= static_cast<double>(p);
        const double factor = var > 0.0 ? std::sqrt(target / var) : 0.0;
        std::vector<double> lambdas(p);
        for (int k = 0; k < p; ++k)
            lambdas[k] = spec.mean + factor * draw[k];
        for (double v : lambdas)
            if (!(v > 0.0))
                throw std::invalid_argument(
                    "build_spectrum: positivity lost after normalization");
        return finish_spectrum(std::move(lambdas));
    }
    }
    throw std::invalid_argument("build_spectrum: unknown spectrum kind");
}

EmpiricalSpectrum decompose_spectrum(std::vector<double> lambdas,
                                     double lambda_bar, double alpha) {
    if (lambdas.empty() || !(lambda_bar > 0.0) || !(alpha > 0.0) ||
        !std::isfinite(alpha))
        throw std::invalid_argument(
            "decompose_spectrum: need nonempty spectrum, lambda_bar > 0 and "
            "finite alpha > 0");
    for (double v : lambdas)
        if (!(v > 0.0))
            throw std::invalid_argument(
                "decompose_spectrum: eigenvalues must be positive");
    EmpiricalSpectrum out;
    out.lambdas = std::move(lambdas);
    out.lambda_bar = lambda_bar;
    out.alpha = alpha;
    const double scale = std::pow(static_cast<double>(out.p()), alpha);
    out.lambda1.resize(out.p());
    for (int k = 0; k < out.p(); ++k)
        out.lambda1[k] = (out.lambdas[k] - lambda_bar) * scale;
    return out;
}

DataMatrix sample_data_matrix(const EnsembleConfig& config,
                              const EmpiricalSpectrum& spectrum,
                              RandomStream& rng) {
    config.validate();
    if (spectrum.p() != config.p)
        throw std::invalid_argument(
            "sample_data_matrix: spectrum and config dimensions disagree");
    const int p = config.p;
    const int n = config.n;
    DataMatrix out;
    out.beta = config.beta;
    if (config.beta == 1) {
        Eigen::MatrixXd w(p, n);
        for (int i = 0; i < p; ++i) {
            const double s = std::sqrt(spectrum.lambdas[i]);
            for (int j = 0; j < n; ++j) w(i, j) = s * rng.normal();
        }
        out.entries = std::move(w);
    } else if (config.beta == 2) {
        Eigen::MatrixXcd w(p, n);
        for (int i = 0; i < p; ++i) {
            const double s = std::sqrt(0.5 * spectrum.lambdas[i]);
            for (int j = 0; j < n; ++j) {
                const double re = s * rng.normal();
                const double im = s * rng.normal();
                w(i, j) = std::complex<double>(re, im);
            }
        }
        out.entries = std::move(w);
    } else {
        Eigen::MatrixXcd w(2 * p, 2 * n);
        for (int i = 0; i < p; ++i) {
            const double s = std::sqrt(0.25 * spectrum.lambdas[i]);
            for (int j = 0; j < n; ++j) {
                const std::complex<double> z(s * rng.normal(), s * rng.normal());
                const std::complex<double> q(s * rng.normal(), s * rng.normal());
                w(2 * i, 2 * j) = z;
                w(2 * i, 2 * j + 1) = q;
                w(2 * i + 1, 2 * j) = -std::conj(q);
                w(2 * i + 1, 2 * j + 1) = std::conj(z);
            }
        }
        out.entries = std::move(w);
    }
    return out;
}

CovMatrix wishart_matrix(const DataMatrix& w) {
    if (std::holds_alternative<Eigen::MatrixXd>(w.entries)) {
        const auto& m = std::get<Eigen::MatrixXd>(w.entries);
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m.rows(), m.rows());
        c.selfadjointView<Eigen::Lower>().rankUpdate(m);
        c = c.selfadjointView<Eigen::Lower>();
        return c;
    }
    const auto& m = std::get<Eigen::MatrixXcd>(w.entries);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m.rows(), m.rows());
    c.selfadjointView<Eigen::Lower>().rankUpdate(m);
    c = c.selfadjointView<Eigen::Lower>();
    return c;
}

std::vector<double> distinct_eigenvalues(const CovMatrix& cov, int beta) {
    Eigen::VectorXd evals;
    if (std::holds_alternative<Eigen::MatrixXd>(cov)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
            std::get<Eigen::MatrixXd>(cov), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw NumericalFailure("eigensolver did not converge");
        evals = solver.eigenvalues();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
            std::get<Eigen::MatrixXcd>(cov), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw NumericalFailure("eigensolver did not converge");
        evals = solver.eigenvalues();
    }
    if (beta != 4) return {evals.data(), evals.data() + evals.size()};
    // Kramers pairs: ascending eigenvalues come as degenerate doublets.
    const int pairs = static_cast<int>(evals.size()) / 2;
    const double scale = std::max(std::abs(evals(evals.size() - 1)), 1e-300);
    std::vector<double> out(pairs);
    for (int k = 0; k < pairs; ++k) {
        const double a = evals(2 * k);
        const double b = evals(2 * k + 1);
        if (std::abs(b - a) > 1e-9 * scale)
            throw NumericalFailure(
                "beta=4 spectrum is not doubly degenerate to tolerance");
        out[k] = 0.5 * (a + b);
    }
    return out;
}

Extremes extreme_eigenvalues(const DataMatrix& w) {
    const std::vector<double> evals =
        distinct_eigenvalues(wishart_matrix(w), w.beta);
    return {evals.back(), evals.front()};
}

} // namespace wedge
