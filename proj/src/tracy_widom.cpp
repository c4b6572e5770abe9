#include "wedge/tracy_widom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "wedge/quadrature.hpp"
#include "wedge/special.hpp"

namespace wedge {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950;
constexpr double kSqrt2 = 1.41421356237309504880168872420970;

double log_cosh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - 0.69314718055994530941723212145818;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

} // namespace

const char* to_string(F4Convention c) {
    switch (c) {
    case F4Convention::argument_sqrt2: return "argument-sqrt2";
    case F4Convention::plain: return "plain";
    case F4Convention::argument_pow34: return "argument-2^0.75";
    }
    return "?";
}

double f4_argument_scale(F4Convention c) {
    switch (c) {
    case F4Convention::argument_sqrt2: return kSqrt2;
    case F4Convention::plain: return 1.0;
    case F4Convention::argument_pow34: return 1.68179283050742908606;
    }
    return 1.0;
}

namespace detail {

double TWCore::base_q(double s) const {
    if (s > s_hi) return airy_unchecked(s).ai;
    if (s < s_lo) return hastings_mcleod_left_asymptote(s);
    return q(s);
}

double TWCore::base_mu(double s) const {
    if (s > s_hi) {
        // int_s^inf Ai ~ exp(-xi) / (2 sqrt(pi) s^{3/4})
        const double xi = (2.0 / 3.0) * s * std::sqrt(s);
        return std::exp(-xi) / (2.0 * std::sqrt(kPi) * std::pow(s, 0.75));
    }
    if (s < s_lo) {
        // q ~ sqrt(-x/2): int q = (sqrt2/3)(-x)^{3/2} + const.  Only reached
        // where the CDFs are < 1e-80, so leading order is plenty.
        const double c = std::sqrt(2.0) / 3.0;
        return i_q(s_lo) +
               c * (std::pow(-s, 1.5) - std::pow(-s_lo, 1.5));
    }
    return i_q(s);
}

double TWCore::base_b(double s) const {
    if (s > s_hi) {
        const double xi = (2.0 / 3.0) * s * std::sqrt(s);
        return std::exp(-2.0 * xi) / (8.0 * kPi * s);
    }
    if (s < s_lo) // int q^2 = int (-x/2) = (s^2 - s_lo^2)/4 + const
        return i_q2(s_lo) + 0.25 * (s * s - s_lo * s_lo);
    return i_q2(s);
}

double TWCore::base_weighted(double s) const {
    if (s > s_hi) {
        const double xi = (2.0 / 3.0) * s * std::sqrt(s);
        return std::exp(-2.0 * xi) / (16.0 * kPi * s * std::sqrt(s));
    }
    if (s < s_lo) {
        // int x q^2 = int x(-x/2) = (s^3 - s_lo^3)/6 + const
        const double a = i_xq2(s_lo) + (s * s * s - s_lo * s_lo * s_lo) / 6.0;
        return a - s * base_b(s);
    }
    return i_xq2(s) - s * i_q2(s);
}

double TWCore::cdf(int beta, F4Convention conv, double chi) const {
    switch (beta) {
    case 2:
        return clamp01(std::exp(-base_weighted(chi)));
    case 1:
        return clamp01(std::exp(-0.5 * base_mu(chi) - 0.5 * base_weighted(chi)));
    case 4: {
        const double s = f4_argument_scale(conv) * chi;
        return clamp01(
            std::exp(-0.5 * base_weighted(s) + log_cosh(0.5 * base_mu(s))));
    }
    default:
        throw std::invalid_argument("tw cdf: beta must be 1, 2 or 4");
    }
}

double TWCore::pdf(int beta, F4Convention conv, double chi) const {
    switch (beta) {
    case 2:
        return std::max(0.0, cdf(2, conv, chi) * base_b(chi));
    case 1:
        return std::max(
            0.0, cdf(1, conv, chi) * 0.5 * (base_q(chi) + base_b(chi)));
    case 4: {
        const double scale = f4_argument_scale(conv);
        const double s = scale * chi;
        const double inner =
            0.5 * (base_b(s) - base_q(s) * std::tanh(0.5 * base_mu(s)));
        return std::max(0.0, scale * cdf(4, conv, chi) * inner);
    }
    default:
        throw std::invalid_argument("tw pdf: beta must be 1, 2 or 4");
    }
}

} // namespace detail

TracyWidom::TracyWidom(F4Convention f4, double s_min, double s_max, double step)
    : f4_convention_(f4) {
    auto core = std::make_shared<detail::TWCore>();
    core->solution = solve_hastings_mcleod(s_min, s_max, step);
    const auto& sol = core->solution;
    const std::size_t n = sol.grid.size();

    // Ascending copies with the analytically known derivatives:
    //   (int_s^inf q)' = -q,  (int q^2)' = -q^2,  (int x q^2)' = -s q^2.
    std::vector<double> x(n), q(n), dq(n), iq(n), diq(n), iq2(n), diq2(n),
        ixq2(n), dixq2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        x[i] = sol.grid[j];
        q[i] = sol.q[j];
        dq[i] = sol.q_prime[j];
        iq[i] = sol.i_q[j];
        diq[i] = -sol.q[j];
        iq2[i] = sol.i_q2[j];
        diq2[i] = -sol.q[j] * sol.q[j];
        ixq2[i] = sol.i_xq2[j];
        dixq2[i] = -sol.grid[j] * sol.q[j] * sol.q[j];
    }
    core->q = HermiteSpline(x, q, dq);
    core->i_q = HermiteSpline(x, iq, diq);
    core->i_q2 = HermiteSpline(x, iq2, diq2);
    core->i_xq2 = HermiteSpline(std::move(x), std::move(ixq2), std::move(dixq2));
    core->s_lo = sol.grid.back();
    core->s_hi = sol.grid.front();
    core_ = std::move(core);

    tw1_ = build_distribution(1);
    tw2_ = build_distribution(2);
    tw4_ = build_distribution(4);
}

TWDistribution TracyWidom::build_distribution(int beta) const {
    TWDistribution d;
    d.beta = beta;
    d.convention = f4_convention_;
    d.core_ = core_;
    const int count =
        static_cast<int>(std::lround((kTableHi - kTableLo) / kTableStep)) + 1;
    d.grid.resize(count);
    d.cdf_table.resize(count);
    d.pdf_table.resize(count);
    for (int i = 0; i < count; ++i) {
        const double chi = kTableLo + kTableStep * i;
        d.grid[i] = chi;
        d.cdf_table[i] = core_->cdf(beta, f4_convention_, chi);
        d.pdf_table[i] = core_->pdf(beta, f4_convention_, chi);
    }
    d.cdf_interp_ = HermiteSpline(d.grid, d.cdf_table, d.pdf_table);
    d.cdf_interp_.make_monotone();
    std::vector<double> dpdf(count);
    for (int i = 1; i + 1 < count; ++i)
        dpdf[i] = (d.pdf_table[i + 1] - d.pdf_table[i - 1]) / (2.0 * kTableStep);
    dpdf[0] = (d.pdf_table[1] - d.pdf_table[0]) / kTableStep;
    dpdf[count - 1] =
        (d.pdf_table[count - 1] - d.pdf_table[count - 2]) / kTableStep;
    d.pdf_interp_ = HermiteSpline(d.grid, d.pdf_table, dpdf);
    return d;
}

TWEvaluated TWDistribution::cdf_checked(double chi) const {
    if (chi < grid.front() || chi > grid.back())
        return {core_->cdf(beta, convention, chi), true};
    return {std::clamp(cdf_interp_(chi), 0.0, 1.0), false};
}

double TWDistribution::pdf(double chi) const {
    if (chi < grid.front() || chi > grid.back())
        return core_->pdf(beta, convention, chi);
    return std::max(0.0, pdf_interp_(chi));
}

double TWDistribution::quantile(double p) const {
    const double lo_p = cdf_table.front();
    const double hi_p = cdf_table.back();
    const double target = std::clamp(p, lo_p, hi_p);
    double lo = grid.front(), hi = grid.back();
    for (int i = 0; i < 100 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf_interp_(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Composite Simpson over a uniform table.
double simpson_table(const std::vector<double>& f, double h) {
    double sum = f.front() + f.back();
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
    return sum * h / 3.0;
}

} // namespace

double TWDistribution::mean() const {
    std::vector<double> g(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        g[i] = grid[i] * pdf_table[i];
    return simpson_table(g, grid[1] - grid[0]);
}

double TWDistribution::variance() const {
    const double m = mean();
    std::vector<double> g(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        g[i] = (grid[i] - m) * (grid[i] - m) * pdf_table[i];
    return simpson_table(g, grid[1] - grid[0]);
}

double TracyWidom::cdf(int beta, double chi) const {
    return distribution(beta).cdf(chi);
}

TWEvaluated TracyWidom::cdf_checked(int beta, double chi) const {
    return distribution(beta).cdf_checked(chi);
}

double TracyWidom::pdf(int beta, double chi) const {
    return distribution(beta).pdf(chi);
}

double TracyWidom::quantile(int beta, double p) const {
    return distribution(beta).quantile(p);
}

const TWDistribution& TracyWidom::distribution(int beta) const {
    switch (beta) {
    case 1: return tw1_;
    case 2: return tw2_;
    case 4: return tw4_;
    default: throw std::invalid_argument("TracyWidom: beta must be 1, 2 or 4");
    }
}

double fredholm_f2_oracle(double chi, int m) {
    if (m < 30)
        throw std::invalid_argument(
            "fredholm_f2_oracle: quadrature order too low (need m >= 30)");
    const double hi = std::max(chi + 6.0, 13.0);
    const GaussLegendreRule rule = gauss_legendre(m);
    std::vector<double> xs(m), sw(m), ai(m), aip(m);
    for (int i = 0; i < m; ++i) {
        xs[i] = 0.5 * (chi + hi) + 0.5 * (hi - chi) * rule.nodes[i];
        sw[i] = std::sqrt(rule.weights[i] * 0.5 * (hi - chi));
        const AiryValue v = detail::airy_unchecked(xs[i]);
        ai[i] = v.ai;
        aip[i] = v.ai_prime;
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double k;
            if (std::abs(xs[i] - xs[j]) < 1e-7) {
                const double mid = 0.5 * (xs[i] + xs[j]);
                const AiryValue v = detail::airy_unchecked(mid);
                k = v.ai_prime * v.ai_prime - mid * v.ai * v.ai;
            } else {
                k = (ai[i] * aip[j] - aip[i] * ai[j]) / (xs[i] - xs[j]);
            }
            a(i, j) -= sw[i] * sw[j] * k;
        }
    }
    return a.partialPivLu().determinant();
}

} // namespace wedge
