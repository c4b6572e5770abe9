// Monte Carlo experiment driver: samples ensembles on per-trial random
// substreams, rescales the extreme eigenvalues, and compares their empirical
// distribution against the limiting laws (ECDF, KS distance, density
// histograms, optional bounded location/scale fitting).
//
// Determinism contract: a run is a pure function of (config, seed).  Trials
// write into preallocated slots indexed by trial number, so the thread count
// and scheduling cannot change any output byte.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wedge/ensemble.hpp"
#include "wedge/scaling.hpp"
#include "wedge/tracy_widom.hpp"

namespace wedge {

// Right-continuous empirical CDF over a sorted copy of the samples.
class ECDF {
public:
    explicit ECDF(std::vector<double> samples);
    double operator()(double x) const; // fraction of samples <= x
    const std::vector<double>& sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

ECDF ecdf(std::vector<double> samples);

// sup_x max(|F(x) - e(x^-)|, |F(x) - e(x^+)|) over the sample points.
double ks_distance(const ECDF& e, const std::function<double(double)>& cdf);
double ks_distance(const ECDF& e, const TWDistribution& dist);

struct FitResult {
    double delta = 0.0; // location shift, in sample units
    double kappa = 1.0; // scale factor
    double ks = 0.0;    // achieved KS after the transform x -> (x-delta)/kappa
    bool boundary_warning = false; // optimum pinned at a bound
};

// Minimize KS((samples - delta)/kappa, F) over |delta| <= delta_max and
// kappa in [kappa_lo, kappa_hi]: coarse grid, then alternating golden-section
// refinement.  Requires at least 1000 samples.
FitResult fit_location_scale(const std::vector<double>& samples,
                             const TWDistribution& dist, double delta_max,
                             double kappa_lo, double kappa_hi);

struct Histogram {
    std::vector<double> centers;
    std::vector<double> density; // area-normalized
    double bin_width = 0.0;
};

Histogram pdf_histogram(const std::vector<double>& samples, int bins);

struct ExperimentConfig {
    EnsembleConfig ensemble;
    long trials = 100;
    bool edge_max = true;
    bool edge_min = false;
    ScalingMode scaling_mode = ScalingMode::adjusted;
    int histogram_bins = 60;
    int threads = 1;

    void validate() const; // trials >= 100, bins >= 10, ensemble valid
};

struct EdgeResult {
    Edge edge = Edge::max;
    ScalingParams params;          // parameters behind `chi`
    ScalingParams params_paper;    // unadjusted reference
    std::vector<double> chi;       // final rescaled samples, trial order
    double ks = 0.0;               // KS of `chi` against F_beta
    double ks_paper = 0.0;         // KS under plain paper scaling
    double delta = 0.0;            // fitted shift (chi units; 0 unless fitted)
    double kappa = 1.0;            // fitted scale (1 unless fitted)
    double delta_bound = 0.0;      // |delta| bound used: 5 mu / (n |sigma|)
    double kappa_halfwidth = 0.0;  // |kappa-1| bound used: 5 n^{-1/3}
    bool fit_boundary_warning = false;
    Histogram histogram;
};

struct ExperimentResult {
    ExperimentConfig config;
    double lambda_bar = 1.0;
    std::vector<double> x_max; // per trial
    std::vector<double> x_min;
    bool has_max = false;
    bool has_min = false;
    EdgeResult max_edge;
    EdgeResult min_edge;
    ConditionReport condition;
    F4Convention f4_convention = F4Convention::argument_sqrt2;
    std::vector<long> resampled_trials;
};

// Failed trials are retried on a fresh substream (and recorded); the run
// aborts if more than 0.1% of trials fail.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const TracyWidom& tw);

} // namespace wedge
