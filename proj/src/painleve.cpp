#include "wedge/painleve.hpp"

#include <cmath>
#include <stdexcept>

#include "wedge/quadrature.hpp"
#include "wedge/special.hpp"

namespace wedge {

namespace {

double rhs(double s, double q) { return s * q + 2.0 * q * q * q; }
double rhs_q(double s, double q) { return s + 6.0 * q * q; }

// Classical RK4 for the second-order system, stepping by -h.
void rk4_step(double s, double h, double& q, double& p) {
    auto f = [](double ss, double qq, double pp, double& dq, double& dp) {
        dq = pp;
        dp = rhs(ss, qq);
    };
    double k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
    f(s, q, p, k1q, k1p);
    f(s + 0.5 * h, q + 0.5 * h * k1q, p + 0.5 * h * k1p, k2q, k2p);
    f(s + 0.5 * h, q + 0.5 * h * k2q, p + 0.5 * h * k2p, k3q, k3p);
    f(s + h, q + h * k3q, p + h * k3p, k4q, k4p);
    q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
}

// Cumulative integral along the descending grid: out[i] = tail + int_{s_i}^{s_0} f.
// Fourth-order panels from cubic interpolation through four neighbours.
std::vector<double> cumulative_down(const std::vector<double>& f, double h,
                                    double tail) {
    const std::size_t n = f.size();
    std::vector<double> out(n);
    out[0] = tail;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double panel;
        if (i == 0) {
            panel = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        } else if (i + 2 < n) {
            panel = h / 24.0 *
                    (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
        } else {
            panel = h / 24.0 *
                    (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]);
        }
        out[i + 1] = out[i] + panel;
    }
    return out;
}

// Tridiagonal solve (Thomas), in place on copies.
std::vector<double> solve_tridiag(std::vector<double> a, std::vector<double> b,
                                  std::vector<double> c, std::vector<double> r) {
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        r[i] -= m * r[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (r[i] - c[i] * x[i + 1]) / b[i];
    return x;
}

} // namespace

double hastings_mcleod_left_asymptote(double s) {
    const double s3 = 1.0 / (s * s * s);
    return std::sqrt(-0.5 * s) *
           (1.0 + s3 * (0.125 + s3 * (-73.0 / 128.0 + s3 * (10657.0 / 1024.0))));
}

PainleveSolution solve_hastings_mcleod(double s_min, double s_max, double step) {
    if (!(s_max >= 6.0) || !(s_min <= -10.0) || !(step > 0.0 && step <= 0.01))
        throw std::invalid_argument(
            "solve_hastings_mcleod: need s_max >= 6, s_min <= -10, 0 < step <= 0.01");

    const std::size_t n_panels =
        static_cast<std::size_t>(std::ceil((s_max - s_min) / step - 1e-12));
    const double h = (s_max - s_min) / static_cast<double>(n_panels);
    const std::size_t n = n_panels + 1;

    PainleveSolution sol;
    sol.step = h;
    sol.grid.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        sol.grid[i] = s_max - h * static_cast<double>(i);
    sol.grid[n - 1] = s_min;

    // Initial guess: RK4 march from the Airy boundary values; below s = -4
    // the march has accumulated amplified roundoff, so hand over to the
    // asymptote there.  Newton refines everything afterwards.
    const AiryValue right = airy(std::min(s_max, 15.0));
    sol.q.assign(n, 0.0);
    double q = right.ai, p = right.ai_prime;
    sol.q[0] = q;
    for (std::size_t i = 1; i < n; ++i) {
        rk4_step(sol.grid[i - 1], -h, q, p);
        if (std::abs(q) > 1e3)
            throw std::runtime_error(
                "solve_hastings_mcleod: solution blew up during the initial "
                "march; step/boundary misconfiguration");
        sol.q[i] = (sol.grid[i] < -4.0) ? hastings_mcleod_left_asymptote(sol.grid[i])
                                        : q;
    }
    sol.q[n - 1] = hastings_mcleod_left_asymptote(s_min);

    // Numerov residual  G_i = (q_{i-1} - 2 q_i + q_{i+1})
    //                         - h^2/12 (f_{i-1} + 10 f_i + f_{i+1}),
    // Newton on the interior unknowns with the two ends pinned.
    const double h2 = h * h;
    const std::size_t m = n - 2;
    std::vector<double> sub(m), dia(m), sup(m), res(m);
    for (int iter = 0; iter < 50; ++iter) {
        double worst = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t i = k + 1;
            const double g =
                (sol.q[i - 1] - 2.0 * sol.q[i] + sol.q[i + 1]) -
                h2 / 12.0 *
                    (rhs(sol.grid[i - 1], sol.q[i - 1]) +
                     10.0 * rhs(sol.grid[i], sol.q[i]) +
                     rhs(sol.grid[i + 1], sol.q[i + 1]));
            res[k] = -g;
            sub[k] = 1.0 - h2 / 12.0 * rhs_q(sol.grid[i - 1], sol.q[i - 1]);
            dia[k] = -2.0 - h2 * 10.0 / 12.0 * rhs_q(sol.grid[i], sol.q[i]);
            sup[k] = 1.0 - h2 / 12.0 * rhs_q(sol.grid[i + 1], sol.q[i + 1]);
            worst = std::max(worst, std::abs(g));
        }
        if (worst < 1e-14) break;
        // First/last rows must not reference the pinned boundary unknowns.
        sub[0] = 0.0;
        sup[m - 1] = 0.0;
        const std::vector<double> delta = solve_tridiag(sub, dia, sup, res);
        double largest = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            sol.q[k + 1] += delta[k];
            largest = std::max(largest, std::abs(delta[k]));
            if (std::abs(sol.q[k + 1]) > 1e3)
                throw std::runtime_error(
                    "solve_hastings_mcleod: Newton iterate blew up; "
                    "step/boundary misconfiguration");
        }
        if (largest < 1e-13 && iter > 0) break;
    }

    // Derivative by 4th-order differences in index space (ds = -h per index).
    sol.q_prime.assign(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i)
        sol.q_prime[i] = -(-sol.q[i + 2] + 8.0 * sol.q[i + 1] -
                           8.0 * sol.q[i - 1] + sol.q[i - 2]) /
                         (12.0 * h);
    sol.q_prime[0] = right.ai_prime;
    sol.q_prime[1] = -(-3.0 * sol.q[0] - 10.0 * sol.q[1] + 18.0 * sol.q[2] -
                       6.0 * sol.q[3] + sol.q[4]) /
                     (12.0 * h);
    sol.q_prime[n - 2] = -(25.0 * sol.q[n - 2] - 48.0 * sol.q[n - 3] +
                           36.0 * sol.q[n - 4] - 16.0 * sol.q[n - 5] +
                           3.0 * sol.q[n - 6]) /
                         (12.0 * h);
    sol.q_prime[n - 1] = -(25.0 * sol.q[n - 1] - 48.0 * sol.q[n - 2] +
                           36.0 * sol.q[n - 3] - 16.0 * sol.q[n - 4] +
                           3.0 * sol.q[n - 5]) /
                         (12.0 * h);

    // Tail pieces beyond s_max, where q is Airy to far below the accuracy
    // of everything else here.
    const double tail_cut = s_max + 20.0;
    const auto ai = [](double x) { return detail::airy_unchecked(x).ai; };
    const double t_q = adaptive_simpson(
        [&](double x) { return ai(x); }, s_max, tail_cut, 1e-16);
    const double t_q2 = adaptive_simpson(
        [&](double x) { const double a = ai(x); return a * a; }, s_max,
        tail_cut, 1e-18);
    const double t_xq2 = adaptive_simpson(
        [&](double x) { const double a = ai(x); return x * a * a; }, s_max,
        tail_cut, 1e-18);

    std::vector<double> q2(n), xq2(n);
    for (std::size_t i = 0; i < n; ++i) {
        q2[i] = sol.q[i] * sol.q[i];
        xq2[i] = sol.grid[i] * q2[i];
    }
    sol.i_q = cumulative_down(sol.q, h, t_q);
    sol.i_q2 = cumulative_down(q2, h, t_q2);
    sol.i_xq2 = cumulative_down(xq2, h, t_xq2);
    return sol;
}

} // namespace wedge
