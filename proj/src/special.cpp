// Airy function engine.
//
// Three regimes, each using a method that is numerically benign there:
//   |s| <= 4.5    Maclaurin series (exact initial values at 0; no
//                 cancellation trouble yet at this radius).
//   s  < -4.5     Taylor-series marching of the ODE y'' = s*y from s = 0
//                 leftward.  In the oscillatory region both fundamental
//                 solutions stay bounded, so the march is stable.
//   s  >  4.5     Bessel-K integral route,
//                    Ai(s)  =  sqrt(s/3)/pi * K_{1/3}(xi)
//                    Ai'(s) = -s/(pi*sqrt(3)) * K_{2/3}(xi),
//                 xi = (2/3) s^{3/2}, with K_nu evaluated by a trapezoid
//                 rule on exp(-xi*cosh t)*cosh(nu*t), which converges to
//                 machine precision for these xi.
// Marching rightward past ~5 would be unstable (the Bi component of any
// rounding error grows like exp(+(2/3)s^{3/2})), hence the split.

#include "wedge/special.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace wedge {

namespace {

constexpr double kAi0 = 0.35502805388781723926006318600418;
constexpr double kAip0 = -0.25881940379280679840518356018920;
constexpr double kPi = 3.14159265358979323846264338327950;

AiryValue airy_maclaurin(double s) {
    const double s3 = s * s * s;
    // f, g are the two standard series solutions; fp, gp their derivatives.
    double f = 1.0, f_term = 1.0;
    double g = s, g_term = s;
    double fp = 0.0, fp_term = s * s / 2.0;
    double gp = 1.0, gp_term = 1.0;
    fp = fp_term;
    for (int k = 0; k < 60; ++k) {
        const double k3 = 3.0 * k;
        f_term *= s3 / ((k3 + 2.0) * (k3 + 3.0));
        g_term *= s3 / ((k3 + 3.0) * (k3 + 4.0));
        gp_term *= s3 / ((k3 + 1.0) * (k3 + 3.0));
        f += f_term;
        g += g_term;
        gp += gp_term;
        if (k >= 1) {
            fp_term *= s3 / (k3 * (k3 + 2.0));
            fp += fp_term;
        }
        if (std::abs(f_term) < 1e-19 * std::abs(f) &&
            std::abs(g_term) < 1e-19 * (std::abs(g) + 1e-30))
            break;
    }
    return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// One Taylor step of y'' = s*y from s0 to s0 + h given (y, y').
void taylor_step(double s0, double h, double& y, double& yp) {
    // Coefficients c[k] of y(s0 + t) = sum c[k] t^k obey
    //   c[k+2] = (s0*c[k] + c[k-1]) / ((k+1)(k+2)).
    std::array<double, 40> c{};
    c[0] = y;
    c[1] = yp;
    double val = c[0] + c[1] * h;
    double der = c[1];
    double hk = h;
    for (int k = 0; k + 2 < static_cast<int>(c.size()); ++k) {
        const double prev = (k >= 1) ? c[k - 1] : 0.0;
        c[k + 2] = (s0 * c[k] + prev) / ((k + 1.0) * (k + 2.0));
        der += (k + 2.0) * c[k + 2] * hk;
        hk *= h;
        val += c[k + 2] * hk;
        if (std::abs(c[k + 2] * hk) < 1e-20 * (std::abs(val) + 1e-30) && k > 6)
            break;
    }
    y = val;
    yp = der;
}

AiryValue airy_march_left(double s) {
    double y = kAi0, yp = kAip0;
    double pos = 0.0;
    const double step = 0.25;
    while (pos - s > 1e-14) {
        const double h = std::min(step, pos - s);
        taylor_step(pos, -h, y, yp);
        pos -= h;
    }
    return {y, yp};
}

double bessel_k_integral(double nu, double xi) {
    // Integrand underflows once xi*cosh(t) > ~745; stop just past that.
    const double t_max = std::acosh(std::min(745.0 / xi, 1e8)) + 0.5;
    const double h = 0.05;
    double sum = 0.5 * std::exp(-xi); // t = 0 endpoint, cosh(0) = 1
    for (int i = 1;; ++i) {
        const double t = h * i;
        if (t > t_max) break;
        const double e = -xi * std::cosh(t);
        if (e < -745.0) break;
        sum += std::exp(e) * std::cosh(nu * t);
    }
    return sum * h;
}

AiryValue airy_bessel_k(double s) {
    const double xi = (2.0 / 3.0) * s * std::sqrt(s);
    if (xi > 700.0) return {0.0, 0.0};
    const double k13 = bessel_k_integral(1.0 / 3.0, xi);
    const double k23 = bessel_k_integral(2.0 / 3.0, xi);
    return {std::sqrt(s / 3.0) / kPi * k13, -s / (kPi * std::sqrt(3.0)) * k23};
}

} // namespace

namespace detail {

AiryValue airy_unchecked(double s) {
    if (s < -15.0)
        throw std::domain_error("airy: argument below -15");
    if (s > 4.5) return airy_bessel_k(s);
    if (s < -4.5) return airy_march_left(s);
    return airy_maclaurin(s);
}

} // namespace detail

AiryValue airy(double s) {
    if (!(s >= -15.0 && s <= 15.0))
        throw std::domain_error("airy: argument outside [-15, 15]");
    return detail::airy_unchecked(s);
}

} // namespace wedge
