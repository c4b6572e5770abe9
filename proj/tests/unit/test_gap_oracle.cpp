#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "wedge/errors.hpp"
#include "wedge/gap_oracle.hpp"
#include "wedge/special.hpp"

using namespace wedge;

namespace {

GapQuery make_query(GapKind kind, double threshold, int n,
                    std::vector<double> lambdas) {
    GapQuery q;
    q.kind = kind;
    q.threshold = threshold;
    q.beta = 2;
    q.n = n;
    q.p = static_cast<int>(lambdas.size());
    q.spectrum = decompose_spectrum(std::move(lambdas), 1.0, 1.75);
    return q;
}

} // namespace

TEST_CASE("p=1 reduces to the regularized incomplete gamma") {
    for (int n : {1, 3, 7}) {
        for (double t : {0.3, 1.0, 4.0}) {
            const GapQuery q = make_query(GapKind::max_below_t, t, n, {1.0});
            CHECK(gap_exact_beta2(q) ==
                  doctest::Approx(regularized_gamma_p(n - 1 + 1.0, t))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("square case with unit spectrum: P(min >= s) = exp(-p s)") {
    for (int p : {2, 5, 8}) {
        for (double s : {0.01, 0.1, 0.4}) {
            const GapQuery q =
                make_query(GapKind::min_above_s, s, p,
                           std::vector<double>(p, 1.0));
            CHECK(gap_exact_beta2(q) ==
                  doctest::Approx(std::exp(-p * s)).epsilon(1e-9));
        }
    }
}

TEST_CASE("upsilon accessor") {
    GapQuery q = make_query(GapKind::max_below_t, 1.0, 6, {1.0, 1.0});
    q.beta = 2;
    CHECK(q.upsilon() == doctest::Approx(4.0));
    q.beta = 1;
    CHECK(q.upsilon() == doctest::Approx(1.5));
    q.beta = 4;
    CHECK(q.upsilon() == doctest::Approx(9.0));
}

TEST_CASE("distinct-spectrum gap matches Monte Carlo") {
    // p=2, n=4, Lambda = (0.8, 1.2), t = 6: binomial check over 1e6 trials.
    const GapQuery q = make_query(GapKind::max_below_t, 6.0, 4, {0.8, 1.2});
    const double exact = gap_exact_beta2(q);
    EnsembleConfig cfg;
    cfg.beta = 2;
    cfg.p = 2;
    cfg.n = 4;
    cfg.seed = 424242;
    const long trials = 1000000;
    long hits = 0;
    for (long t = 0; t < trials; ++t) {
        RandomStream rng(cfg.seed, t);
        const DataMatrix w = sample_data_matrix(cfg, q.spectrum, rng);
        if (extreme_eigenvalues(w).x_max <= q.threshold) ++hits;
    }
    const double mc = static_cast<double>(hits) / trials;
    const double se = std::sqrt(exact * (1.0 - exact) / trials);
    CHECK(std::abs(mc - exact) <= 3.0 * se);
}

TEST_CASE("monotone in the threshold") {
    double prev = -1.0;
    for (double t = 0.5; t <= 12.0; t += 0.5) {
        const double v =
            gap_exact_beta2(make_query(GapKind::max_below_t, t, 5, {0.7, 1.0, 1.3}));
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    prev = 2.0;
    for (double s = 0.05; s <= 3.0; s += 0.25) {
        const double v =
            gap_exact_beta2(make_query(GapKind::min_above_s, s, 5, {0.7, 1.0, 1.3}));
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("complementarity at p=1") {
    for (double t : {0.2, 1.0, 3.0}) {
        const double below =
            gap_exact_beta2(make_query(GapKind::max_below_t, t, 4, {1.1}));
        const double above =
            gap_exact_beta2(make_query(GapKind::min_above_s, t, 4, {1.1}));
        CHECK(below + above == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("scale covariance: gap(t; c Lambda) = gap(t/c; Lambda)") {
    const double c = 2.7;
    for (double t : {1.0, 3.0, 8.0}) {
        const double lhs = gap_exact_beta2(
            make_query(GapKind::max_below_t, t, 5, {0.8 * c, 1.0 * c, 1.2 * c}));
        const double rhs = gap_exact_beta2(
            make_query(GapKind::max_below_t, t / c, 5, {0.8, 1.0, 1.2}));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("theta-representation: indicator average reproduces the gap") {
    // E[ indicator(t I - W W^dagger > 0) ] = P(x_max <= t), p <= 4.
    const GapQuery q = make_query(GapKind::max_below_t, 8.0, 5, {0.9, 1.0, 1.15});
    const double exact = gap_exact_beta2(q);
    EnsembleConfig cfg;
    cfg.beta = 2;
    cfg.p = 3;
    cfg.n = 5;
    cfg.seed = 171717;
    const long trials = 200000;
    long hits = 0;
    for (long t = 0; t < trials; ++t) {
        RandomStream rng(cfg.seed, t);
        const DataMatrix w = sample_data_matrix(cfg, q.spectrum, rng);
        const CovMatrix cov_holder = wishart_matrix(w);
        const auto& cov = std::get<Eigen::MatrixXcd>(cov_holder);
        const Eigen::MatrixXcd arg =
            q.threshold * Eigen::MatrixXcd::Identity(3, 3) - cov;
        hits += positive_definite_indicator(arg);
    }
    const double mc = static_cast<double>(hits) / trials;
    const double se = std::sqrt(exact * (1.0 - exact) / trials);
    CHECK(std::abs(mc - exact) <= 3.0 * se);
}

TEST_CASE("positive-definite indicator") {
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(3, 3);
    CHECK(positive_definite_indicator(eye) == 1);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1e-6;
    CHECK(positive_definite_indicator(d) == 0);
    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(positive_definite_indicator(asym), std::invalid_argument);
}

TEST_CASE("indicator agrees with the Sylvester-criterion oracle") {
    RandomStream rng(95, 0);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 2 + rep % 4;
        Eigen::MatrixXd a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                a(i, j) = rng.normal();
                a(j, i) = a(i, j);
            }
        // shift so both signs of the verdict occur across reps
        a += ((rep % 3) - 0.5) * Eigen::MatrixXd::Identity(n, n);
        bool all_minors_positive = true;
        for (int k = 1; k <= n; ++k)
            if (a.topLeftCorner(k, k).determinant() <= 0.0)
                all_minors_positive = false;
        CHECK(positive_definite_indicator(a) == (all_minors_positive ? 1 : 0));
    }
}

TEST_CASE("near-degenerate spectra are refused") {
    CHECK_THROWS_AS(gap_exact_beta2(make_query(GapKind::max_below_t, 2.0, 4,
                                               {1.0, 1.0 + 1e-9})),
                    IllConditionedError);
    // exactly equal is fine (confluent route)
    CHECK_NOTHROW(
        gap_exact_beta2(make_query(GapKind::max_below_t, 2.0, 4, {1.0, 1.0})));
}

TEST_CASE("query validation and error estimate") {
    GapQuery q = make_query(GapKind::max_below_t, -1.0, 4, {1.0});
    CHECK_THROWS_AS(gap_exact_beta2(q), std::invalid_argument);
    q = make_query(GapKind::max_below_t, 1.0, 4, {1.0});
    q.beta = 1;
    CHECK_THROWS_AS(gap_exact_beta2(q), std::invalid_argument);
    q.beta = 2;
    double err = -1.0;
    const double v = gap_exact_beta2(
        make_query(GapKind::max_below_t, 5.0, 6, {0.8, 1.0, 1.2}), &err);
    CHECK(v > 0.0);
    CHECK(err >= 0.0);
    CHECK(err <= 1e-10);
}
