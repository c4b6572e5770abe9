#include "reference_oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "wedge/quadrature.hpp"

namespace wedge::testref {

namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004L;
constexpr long double kAip0 = -0.258819403792806798405183560189L;
constexpr long double kPi = 3.141592653589793238462643383280L;

AiryRef airy_maclaurin_ld(long double s) {
    const long double s3 = s * s * s;
    long double f = 1.0L, f_term = 1.0L;
    long double g = s, g_term = s;
    long double fp = s * s / 2.0L, fp_term = fp;
    long double gp = 1.0L, gp_term = 1.0L;
    for (int k = 0; k < 400; ++k) {
        const long double k3 = 3.0L * k;
        f_term *= s3 / ((k3 + 2.0L) * (k3 + 3.0L));
        g_term *= s3 / ((k3 + 3.0L) * (k3 + 4.0L));
        gp_term *= s3 / ((k3 + 1.0L) * (k3 + 3.0L));
        f += f_term;
        g += g_term;
        gp += gp_term;
        if (k >= 1) {
            fp_term *= s3 / (k3 * (k3 + 2.0L));
            fp += fp_term;
        }
        if (fabsl(f_term) < 1e-26L * fabsl(f) &&
            fabsl(g_term) < 1e-26L * (fabsl(g) + 1e-30L))
            break;
    }
    return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// Coefficients u_k, v_k of the Airy asymptotic expansions.
void uv_coeffs(int count, std::vector<long double>& u,
               std::vector<long double>& v) {
    u.assign(count, 0.0L);
    v.assign(count, 0.0L);
    u[0] = 1.0L;
    v[0] = 1.0L;
    for (int k = 1; k < count; ++k) {
        u[k] = u[k - 1] * (6.0L * k - 1.0L) * (6.0L * k - 3.0L) *
               (6.0L * k - 5.0L) / (216.0L * k * (2.0L * k - 1.0L));
        v[k] = u[k] * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
    }
}

AiryRef airy_asymptotic_pos(long double s) {
    const long double xi = (2.0L / 3.0L) * s * sqrtl(s);
    std::vector<long double> u, v;
    uv_coeffs(60, u, v);
    long double su = 0.0L, sv = 0.0L, pw = 1.0L;
    long double prev = 1e30L;
    for (int k = 0; k < 60; ++k) {
        const long double tu = u[k] * pw;
        if (fabsl(tu) > prev) break; // divergent tail reached
        su += (k % 2 ? -tu : tu);
        sv += (k % 2 ? -v[k] * pw : v[k] * pw);
        prev = fabsl(tu);
        pw /= xi;
    }
    const long double pref = expl(-xi) / (2.0L * sqrtl(kPi) * powl(s, 0.25L));
    return {pref * su, -expl(-xi) * powl(s, 0.25L) / (2.0L * sqrtl(kPi)) * sv};
}

AiryRef airy_asymptotic_neg(long double s) {
    const long double z = -s;
    const long double xi = (2.0L / 3.0L) * z * sqrtl(z);
    std::vector<long double> u, v;
    uv_coeffs(60, u, v);
    long double ce = 0.0L, se = 0.0L, cdo = 0.0L, sdo = 0.0L;
    long double pw = 1.0L;
    for (int k = 0; 2 * k + 1 < 60; ++k) {
        const long double sgn = (k % 2 ? -1.0L : 1.0L);
        const long double even = sgn * u[2 * k] * pw;
        const long double evend = sgn * v[2 * k] * pw;
        const long double odd = sgn * u[2 * k + 1] * pw / xi;
        const long double oddd = sgn * v[2 * k + 1] * pw / xi;
        if (k > 0 && fabsl(even) > 1.0L) break;
        ce += even;
        se += odd;
        cdo += evend;
        sdo += oddd;
        pw /= (xi * xi);
    }
    const long double phase = xi - kPi / 4.0L;
    const long double c = cosl(phase), sn = sinl(phase);
    const long double ai = (c * ce + sn * se) / (sqrtl(kPi) * powl(z, 0.25L));
    const long double aip = (sn * cdo - c * sdo) * powl(z, 0.25L) / sqrtl(kPi);
    return {ai, aip};
}

} // namespace

AiryRef airy_reference(double s) {
    if (std::abs(s) <= 9.5) return airy_maclaurin_ld(s);
    if (s > 0) return airy_asymptotic_pos(s);
    return airy_asymptotic_neg(s);
}

double airy_positive_quadrature(double s) {
    if (s < 0) throw std::invalid_argument("airy_positive_quadrature: s >= 0");
    const double xi = (2.0 / 3.0) * s * std::sqrt(s);
    const double damp = std::sqrt(std::max(s, 1e-8));
    const double t_max = std::sqrt(48.0 / damp) + 2.0;
    const double integral = adaptive_simpson(
        [&](double t) {
            return std::exp(-damp * t * t) * std::cos(t * t * t / 3.0);
        },
        0.0, t_max, 1e-15);
    return std::exp(-xi) / 3.141592653589793238462643383280 * integral;
}

double lue_gap_probability(int p, int nu, double t) {
    if (p < 1 || nu < 0 || !(t > 0.0))
        throw std::invalid_argument("lue_gap_probability: bad arguments");
    // psi_j(x) = sqrt(j! / (j+nu)!) x^{nu/2} e^{-x/2} L_j^{(nu)}(x), j < p.
    auto wavefunctions = [&](double x, std::vector<double>& psi) {
        std::vector<double> lag(p);
        lag[0] = 1.0;
        if (p > 1) lag[1] = 1.0 + nu - x;
        for (int j = 2; j < p; ++j)
            lag[j] = ((2.0 * j - 1.0 + nu - x) * lag[j - 1] -
                      (j - 1.0 + nu) * lag[j - 2]) /
                     j;
        for (int j = 0; j < p; ++j) {
            const double log_norm =
                0.5 * (std::lgamma(j + 1.0) - std::lgamma(j + nu + 1.0));
            psi[j] = std::exp(log_norm + 0.5 * nu * std::log(x) - 0.5 * x) *
                     lag[j];
        }
    };
    // Gauss-Legendre panels on [t, t_hi]; the integrand decays like e^{-x}
    // once past the spectrum bulk.
    const double t_hi = t + 40.0 + 4.0 * (p + nu);
    const int panels = 24;
    const GaussLegendreRule rule = gauss_legendre(40);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
    std::vector<double> psi(p);
    for (int panel = 0; panel < panels; ++panel) {
        const double a = t + (t_hi - t) * panel / panels;
        const double b = t + (t_hi - t) * (panel + 1) / panels;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
            const double w = 0.5 * (b - a) * rule.weights[i];
            wavefunctions(x, psi);
            for (int j = 0; j < p; ++j)
                for (int k = 0; k <= j; ++k) m(j, k) += w * psi[j] * psi[k];
        }
    }
    for (int j = 0; j < p; ++j)
        for (int k = j + 1; k < p; ++k) m(j, k) = m(k, j);
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p, p) - m;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
}

std::vector<double> charpoly_eigenvalues(const std::vector<std::complex<double>>& a,
                                         int n) {
    if (n < 1 || n > 6 || static_cast<int>(a.size()) != n * n)
        throw std::invalid_argument("charpoly_eigenvalues: bad dimensions");
    using C = std::complex<double>;
    auto at = [&](const std::vector<C>& m, int i, int j) -> C {
        return m[i + n * j];
    };
    // Faddeev-LeVerrier: M_1 = A, c_1 = -tr M_1,
    // M_{k+1} = A (M_k + c_k I), c_{k+1} = -tr(M_{k+1})/(k+1).
    std::vector<C> mk(a);
    std::vector<double> coeff(n + 1, 0.0); // p(x) = x^n + coeff[1] x^{n-1} + ...
    coeff[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        C tr = 0.0;
        for (int i = 0; i < n; ++i) tr += at(mk, i, i);
        const C ck = -tr / static_cast<double>(k);
        coeff[k] = ck.real(); // Hermitian input -> real coefficients
        if (k == n) break;
        std::vector<C> shifted(mk);
        for (int i = 0; i < n; ++i) shifted[i + n * i] += ck;
        std::vector<C> next(n * n, C(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                C s2 = 0.0;
                for (int l = 0; l < n; ++l)
                    s2 += at(a, i, l) * at(shifted, l, j);
                next[i + n * j] = s2;
            }
        mk = std::move(next);
    }
    auto poly = [&](double x) {
        double v = 0.0;
        for (int k = 0; k <= n; ++k) v = v * x + coeff[k];
        return v;
    };
    // All roots are real for Hermitian input; bracket by sign scan.
    double bound = 1.0;
    for (int k = 1; k <= n; ++k)
        bound = std::max(bound, 2.0 * std::pow(std::abs(coeff[k]), 1.0 / k));
    const int grid = 200000;
    std::vector<double> roots;
    double prev_x = -bound, prev_v = poly(prev_x);
    for (int i = 1; i <= grid && static_cast<int>(roots.size()) < n; ++i) {
        const double x = -bound + 2.0 * bound * i / grid;
        const double v = poly(x);
        if (prev_v == 0.0) roots.push_back(prev_x);
        if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
            double lo = prev_x, hi = x, flo = prev_v;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = poly(mid);
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    return roots;
}

} // namespace wedge::testref
