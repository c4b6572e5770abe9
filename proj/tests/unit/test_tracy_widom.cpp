#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "wedge/tracy_widom.hpp"

using namespace wedge;
using wedge::testfix::shared_tw;

namespace {

// Moments of f2 from the Fredholm route alone, by integrating the CDF:
//   E[chi]   = 6 F(6) + 10 F(-10) - int F
//   E[chi^2] = 36 F(6) - 100 F(-10) - 2 int chi F
double fredholm_moment_mean(int m) {
    const int n = 160;
    double integral = 0.0;
    const double h = 16.0 / n;
    for (int i = 0; i <= n; ++i) {
        const double chi = -10.0 + h * i;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        integral += w * fredholm_f2_oracle(chi, m);
    }
    integral *= h / 3.0;
    return 6.0 * fredholm_f2_oracle(6.0, m) +
           10.0 * fredholm_f2_oracle(-10.0, m) - integral;
}

double fredholm_moment_second(int m) {
    const int n = 160;
    double integral = 0.0;
    const double h = 16.0 / n;
    for (int i = 0; i <= n; ++i) {
        const double chi = -10.0 + h * i;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        integral += w * chi * fredholm_f2_oracle(chi, m);
    }
    integral *= h / 3.0;
    return 36.0 * fredholm_f2_oracle(6.0, m) -
           100.0 * fredholm_f2_oracle(-10.0, m) - 2.0 * integral;
}

} // namespace

TEST_CASE("Painleve and Fredholm routes to F2 agree to 1e-6 on [-8, 4]") {
    const TracyWidom& tw = shared_tw();
    double worst = 0.0;
    for (double chi = -8.0; chi <= 4.0 + 1e-9; chi += 0.25) {
        const double a = tw.cdf(2, chi);
        const double b = fredholm_f2_oracle(chi, 60);
        worst = std::max(worst, std::abs(a - b));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("F2(0) is about 0.96937") {
    CHECK(shared_tw().cdf(2, 0.0) == doctest::Approx(0.96937).epsilon(5e-5));
    CHECK(fredholm_f2_oracle(0.0, 60) == doctest::Approx(0.96937).epsilon(5e-5));
}

TEST_CASE("f2 moments match the Fredholm oracle") {
    const TWDistribution& d = shared_tw().distribution(2);
    const double mean = d.mean();
    const double var = d.variance();
    const double mean_oracle = fredholm_moment_mean(60);
    const double second_oracle = fredholm_moment_second(60);
    const double var_oracle = second_oracle - mean_oracle * mean_oracle;
    CHECK(std::abs(mean - mean_oracle) <= 1e-3);
    CHECK(std::abs(var - var_oracle) <= 1e-3);
    CHECK(mean == doctest::Approx(-1.7711).epsilon(1e-3));
    CHECK(var == doctest::Approx(0.8132).epsilon(2e-3));
}

TEST_CASE("left tail is negligible at -10 for every beta") {
    for (int beta : {1, 2, 4})
        CHECK(shared_tw().cdf(beta, -10.0) <= 1e-7);
}

TEST_CASE("right end of the tables") {
    // F2 and F4 have essentially all mass below +6.  F1 genuinely retains
    // ~2e-5 of mass above 6 (its right tail decays like exp(-(2/3)chi^1.5)),
    // so only the weaker statement can hold for beta = 1.
    CHECK(shared_tw().cdf(2, 6.0) >= 1.0 - 1e-8);
    CHECK(shared_tw().cdf(4, 6.0) >= 1.0 - 1e-8);
    CHECK(shared_tw().cdf(1, 6.0) >= 1.0 - 5e-5);
    CHECK(shared_tw().cdf(1, 6.0) <= 1.0 - 1e-6);
}

TEST_CASE("CDFs are nondecreasing on a 1e-2 grid") {
    for (int beta : {1, 2, 4}) {
        const TWDistribution& d = shared_tw().distribution(beta);
        double prev = -1.0;
        for (double chi = -10.0; chi <= 6.0 + 1e-9; chi += 0.01) {
            const double v = d.cdf(chi);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("means interlace: f4 < f2 < f1, all negative") {
    const double m1 = shared_tw().distribution(1).mean();
    const double m2 = shared_tw().distribution(2).mean();
    const double m4 = shared_tw().distribution(4).mean();
    CHECK(m4 < m2);
    CHECK(m2 < m1);
    CHECK(m1 < 0.0);
}

TEST_CASE("pdf tables integrate to the CDF mass and stay nonnegative") {
    for (int beta : {1, 2, 4}) {
        const TWDistribution& d = shared_tw().distribution(beta);
        double integral = d.pdf_table.front() + d.pdf_table.back();
        for (std::size_t i = 1; i + 1 < d.pdf_table.size(); ++i) {
            CHECK(d.pdf_table[i] >= 0.0);
            integral += (i % 2 ? 4.0 : 2.0) * d.pdf_table[i];
        }
        integral *= 0.01 / 3.0;
        const double mass = d.cdf_table.back() - d.cdf_table.front();
        CHECK(std::abs(integral - mass) <= 1e-6);
        if (beta != 1) {
            CHECK(std::abs(integral - 1.0) <= 1e-6);
        } else {
            CHECK(integral >= 1.0 - 5e-5);
            CHECK(integral <= 1.0);
        }
    }
}

TEST_CASE("numerical derivative of cdf_table matches pdf_table") {
    for (int beta : {1, 2, 4}) {
        const TWDistribution& d = shared_tw().distribution(beta);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < d.grid.size(); ++i) {
            const double fd =
                (d.cdf_table[i + 1] - d.cdf_table[i - 1]) / 0.02;
            worst = std::max(worst, std::abs(fd - d.pdf_table[i]));
        }
        CHECK(worst <= 1e-4);
    }
}

TEST_CASE("f2 peaks near -1.87, by both routes") {
    const TWDistribution& d = shared_tw().distribution(2);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < d.pdf_table.size(); ++i)
        if (d.pdf_table[i] > d.pdf_table[arg]) arg = i;
    CHECK(d.grid[arg] == doctest::Approx(-1.87).epsilon(0.02));
    // Same argmax from finite differences of the Fredholm determinant.
    double best = 0.0, best_x = 0.0;
    for (double x = -2.5; x <= -1.2; x += 0.02) {
        const double f = (fredholm_f2_oracle(x + 0.01, 40) -
                          fredholm_f2_oracle(x - 0.01, 40)) /
                         0.02;
        if (f > best) {
            best = f;
            best_x = x;
        }
    }
    CHECK(std::abs(best_x - d.grid[arg]) <= 0.05);
}

TEST_CASE("f1 variance by quadrature over the table") {
    CHECK(shared_tw().distribution(1).variance() ==
          doctest::Approx(1.607).epsilon(3e-3));
}

TEST_CASE("quantile accessor round-trips through the CDF") {
    for (int beta : {1, 2, 4}) {
        const TWDistribution& d = shared_tw().distribution(beta);
        for (double p : {0.01, 0.1, 0.5, 0.9, 0.99}) {
            const double chi = d.quantile(p);
            CHECK(d.cdf(chi) == doctest::Approx(p).epsilon(1e-8));
        }
    }
}

TEST_CASE("Fredholm determinant self-convergence and limits") {
    CHECK(std::abs(fredholm_f2_oracle(-4.0, 30) - fredholm_f2_oracle(-4.0, 60)) <=
          1e-8);
    CHECK(fredholm_f2_oracle(6.0, 40) >= 1.0 - 1e-7);
    CHECK_THROWS_AS(fredholm_f2_oracle(0.0, 20), std::invalid_argument);
}

TEST_CASE("outside the table the evaluation flags extrapolation") {
    const TWDistribution& d = shared_tw().distribution(2);
    const TWEvaluated low = d.cdf_checked(-11.0);
    CHECK(low.extrapolated);
    CHECK(low.value <= 1e-7);
    const TWEvaluated high = d.cdf_checked(7.0);
    CHECK(high.extrapolated);
    CHECK(high.value >= 1.0 - 1e-9);
    CHECK_FALSE(d.cdf_checked(0.0).extrapolated);
}

TEST_CASE("the two F4 conventions differ by a sqrt(2) argument scale") {
    const TracyWidom plain(F4Convention::plain, -10.0, 10.0, 0.004);
    const TracyWidom& scaled = shared_tw();
    // F4_plain(x) = F4_sqrt2(x / sqrt2), so means differ by sqrt2.
    const double mp = plain.distribution(4).mean();
    const double ms = scaled.distribution(4).mean();
    CHECK(mp == doctest::Approx(ms * std::sqrt(2.0)).epsilon(2e-3));
    // The sqrt2-argument convention is the one with the familiar moments.
    CHECK(ms == doctest::Approx(-2.3069).epsilon(2e-3));
    CHECK(scaled.distribution(4).variance() ==
          doctest::Approx(0.5177).epsilon(5e-3));
    // The ensemble-facing variant rescales the argument by 2^{3/4}.
    const TracyWidom pow34(F4Convention::argument_pow34, -14.5, 10.0, 0.004);
    CHECK(pow34.distribution(4).mean() ==
          doctest::Approx(ms * std::sqrt(2.0) / std::pow(2.0, 0.75))
              .epsilon(2e-3));
    CHECK(f4_argument_scale(F4Convention::argument_pow34) ==
          doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-12));
}
