// Quadrature building blocks: Gauss-Legendre rules and an adaptive Simpson
// integrator that also works for complex-valued integrands.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace wedge {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

// Nodes/weights by Newton iteration on the Legendre recurrence.
GaussLegendreRule gauss_legendre(int m);

namespace detail {

template <typename F, typename V>
V adaptive_simpson_rec(const F& f, double a, double b, V fa, V fm, V fb,
                       V whole, double tol, int depth, double* unresolved) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const V flm = f(lm);
    const V frm = f(rm);
    const V left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const V right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const V delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0) {
        if (unresolved) *unresolved += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                                depth - 1, unresolved) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                                depth - 1, unresolved);
}

} // namespace detail

// Adaptive Simpson on [a, b] with absolute tolerance.  V may be double or
// std::complex<double>.  If `unresolved` is given, panels that hit the depth
// limit before meeting tolerance add their error estimate to it instead of
// failing.
template <typename F>
auto adaptive_simpson(const F& f, double a, double b, double tol,
                      int max_depth = 40, double* unresolved = nullptr) {
    using V = decltype(f(a));
    const V fa = f(a);
    const V fb = f(b);
    const V fm = f(0.5 * (a + b));
    const V whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol,
                                        max_depth, unresolved);
}

} // namespace wedge
