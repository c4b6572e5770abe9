#include "wedge/gap_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "wedge/errors.hpp"
#include "wedge/quadrature.hpp"
#include "wedge/special.hpp"

namespace wedge {

namespace {

template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <typename T>
T det_of(const MatrixX<T>& m) {
    return Eigen::PartialPivLU<MatrixX<T>>(m).determinant();
}

template <typename T>
double rcond_of(const MatrixX<T>& m) {
    // 1-norm condition estimate via the explicit inverse; the matrices here
    // are at most 12 x 12.
    const Eigen::FullPivLU<MatrixX<T>> lu(m);
    if (!lu.isInvertible()) return 0.0;
    const MatrixX<T> inv = lu.inverse();
    T norm_m = T(0), norm_inv = T(0);
    for (int j = 0; j < m.cols(); ++j) {
        T cm = T(0), ci = T(0);
        for (int i = 0; i < m.rows(); ++i) {
            cm += std::abs(m(i, j));
            ci += std::abs(inv(i, j));
        }
        norm_m = std::max(norm_m, cm);
        norm_inv = std::max(norm_inv, ci);
    }
    return static_cast<double>(T(1) / (norm_m * norm_inv));
}

double clamp_prob(long double v) {
    return std::clamp(static_cast<double>(v), 0.0, 1.0);
}

// Distinct-eigenvalue (Vandermonde) route:
//   prob = det[ L_k^{j-1} P(nu+j, t/L_k) ] / det[ L_k^{j-1} ].
template <typename T>
T gap_vandermonde(const GapQuery& q, bool check_condition) {
    const int p = q.p;
    const T nu = static_cast<T>(q.n - q.p);
    MatrixX<T> numer(p, p), denom(p, p);
    for (int k = 0; k < p; ++k) {
        const T lk = static_cast<T>(q.spectrum.lambdas[k]);
        const T tau = static_cast<T>(q.threshold) / lk;
        T pw = T(1);
        for (int j = 1; j <= p; ++j) {
            const T g = (q.kind == GapKind::max_below_t)
                            ? regularized_gamma_p(nu + T(j), tau)
                            : regularized_gamma_q(nu + T(j), tau);
            numer(j - 1, k) = pw * g;
            denom(j - 1, k) = pw;
            pw *= lk;
        }
    }
    if (check_condition && rcond_of(denom) < 1e-12)
        throw IllConditionedError(
            "gap_exact_beta2: Vandermonde condition beyond 1e12; perturb the "
            "spectrum or use the equal-eigenvalue limit");
    return det_of(numer) / det_of(denom);
}

// Confluent route for Lambda = c * identity:
//   prob = det[ Gamma(nu+j+k-1) P(nu+j+k-1, t/c) ] / det[ Gamma(nu+j+k-1) ],
// equilibrated by sqrt(Gamma(nu+2j-1)) row/column factors so entries stay
// O(1).
template <typename T>
T gap_hankel(const GapQuery& q, double c, bool check_condition) {
    const int p = q.p;
    const T nu = static_cast<T>(q.n - q.p);
    const T tau = static_cast<T>(q.threshold / c);
    std::vector<T> half(p);
    for (int j = 1; j <= p; ++j)
        half[j - 1] = T(0.5) * std::lgamma(nu + T(2 * j - 1));
    MatrixX<T> numer(p, p), denom(p, p);
    for (int j = 1; j <= p; ++j) {
        for (int k = 1; k <= p; ++k) {
            const T a = nu + T(j + k - 1);
            const T scaled = std::exp(std::lgamma(a) - half[j - 1] - half[k - 1]);
            const T g = (q.kind == GapKind::max_below_t)
                            ? regularized_gamma_p(a, tau)
                            : regularized_gamma_q(a, tau);
            numer(j - 1, k - 1) = scaled * g;
            denom(j - 1, k - 1) = scaled;
        }
    }
    if (check_condition && rcond_of(denom) < 1e-12)
        throw IllConditionedError(
            "gap_exact_beta2: confluent determinant condition beyond 1e12");
    return det_of(numer) / det_of(denom);
}

} // namespace

void GapQuery::validate() const {
    if (!(threshold > 0.0))
        throw std::invalid_argument("GapQuery: threshold must be positive");
    if (p < 1 || p > n)
        throw std::invalid_argument("GapQuery: need 1 <= p <= n");
    if (spectrum.p() != p)
        throw std::invalid_argument("GapQuery: spectrum size != p");
}

double gap_exact_beta2(const GapQuery& q, double* est_error) {
    q.validate();
    if (q.beta != 2)
        throw std::invalid_argument("gap_exact_beta2: exact route needs beta = 2");
    std::vector<double> sorted(q.spectrum.lambdas);
    std::sort(sorted.begin(), sorted.end());
    const double scale = sorted.back();
    const double spread = (sorted.back() - sorted.front()) / scale;
    const bool confluent = (q.p == 1 || spread <= 1e-12);
    if (q.p > 12)
        throw std::invalid_argument("gap_exact_beta2: p <= 12 supported");
    if (!confluent) {
        double min_gap = spread;
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            min_gap = std::min(min_gap, (sorted[i + 1] - sorted[i]) / scale);
        if (min_gap < 1e-8)
            throw IllConditionedError(
                "gap_exact_beta2: nearly degenerate eigenvalues (relative gap "
                "< 1e-8); perturb the spectrum or pass an exactly equal "
                "spectrum");
    }
    const long double value =
        confluent ? gap_hankel<long double>(q, sorted.front(), true)
                  : gap_vandermonde<long double>(q, true);
    if (est_error) {
        // Roundoff estimate: distance between the double and long-double
        // evaluations of the same determinant ratio.
        const double rough = confluent
                                 ? gap_hankel<double>(q, sorted.front(), false)
                                 : gap_vandermonde<double>(q, false);
        *est_error =
            std::abs(static_cast<double>(value) - rough) + 1e-16;
    }
    return clamp_prob(value);
}

namespace {

using Cplx = std::complex<double>;

struct ContourIntegrand {
    int n = 1;
    int p = 0;                   // 0 means "no spectrum factor" (t = inf)
    const double* lambda = nullptr;
    double t = 1.0;

    // Product over dimensions of
    //   exp(1 + i y) (1 + i y)^{-n} prod_k (1 + (1 + i y) L_k / t)^{-1}
    // times the squared Vandermonde coupling.
    Cplx operator()(const std::array<Cplx, 3>& y) const {
        Cplx val = 1.0;
        for (int i = 0; i < n; ++i) {
            const Cplx w = Cplx(1.0, 0.0) + Cplx(0.0, 1.0) * y[i];
            Cplx den = 1.0;
            for (int e = 0; e < n; ++e) den *= w;
            for (int k = 0; k < p; ++k)
                den *= Cplx(1.0, 0.0) + w * (lambda[k] / t);
            val *= std::exp(w) / den;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const Cplx d = y[i] - y[j];
                val *= d * d;
            }
        return val;
    }
};

struct NestedQuad {
    const ContourIntegrand* f = nullptr;
    double slope = 0.75;
    double cutoff = 60.0;
    double tol = 1e-8;
    int max_depth = 22;
    double unresolved = 0.0;

    Cplx integrate() {
        std::array<Cplx, 3> y{};
        return level(0, y);
    }

    Cplx level(int dim, std::array<Cplx, 3>& y) {
        auto slice = [&](double xi) -> Cplx {
            const double sgn = xi < 0.0 ? -1.0 : 1.0;
            y[dim] = Cplx(xi, slope * std::abs(xi));
            const Cplx jac(1.0, slope * sgn);
            std::array<Cplx, 3> inner = y;
            if (dim + 1 == f->n) return jac * (*f)(inner);
            return jac * level(dim + 1, inner);
        };
        // Per-level tolerance: inner integrals are integrand values for the
        // level above, so each nesting level tightens by the domain measure.
        const double level_tol = tol / std::pow(4.0 * cutoff, dim);
        // Seed the recursion with geometrically growing panels.  The
        // integrand oscillates on an O(1) scale near the origin and decays
        // like exp(-slope |xi|); probing [0, cutoff] in one piece can miss
        // the entire mass (all five initial samples land in the tail,
        // especially when the Vandermonde factor zeroes the origin).
        Cplx sum = 0.0;
        double edge = std::min(1.0, cutoff);
        double prev = 0.0;
        int panels = 0;
        for (double e = edge; prev < cutoff; e = std::min(2.0 * e, cutoff)) {
            ++panels;
            prev = e;
            if (e >= cutoff) break;
        }
        const double panel_tol = 0.5 * level_tol / panels;
        prev = 0.0;
        for (double e = edge;; e = std::min(2.0 * e, cutoff)) {
            sum += adaptive_simpson(slice, prev, e, panel_tol, max_depth,
                                    &unresolved);
            sum += adaptive_simpson(slice, -e, -prev, panel_tol, max_depth,
                                    &unresolved);
            if (e >= cutoff) break;
            prev = e;
        }
        return sum;
    }
};

} // namespace

MatrixModelResult gap_max_matrix_model_beta2(const GapQuery& q,
                                             const QuadratureSpec& quad) {
    q.validate();
    if (q.beta != 2)
        throw std::invalid_argument(
            "gap_max_matrix_model_beta2: route implemented for beta = 2");
    if (q.kind != GapKind::max_below_t)
        throw std::invalid_argument(
            "gap_max_matrix_model_beta2: largest-eigenvalue gap only");
    if (q.n > 3)
        throw std::invalid_argument("gap_max_matrix_model_beta2: n <= 3");
    if (!(quad.contour_slope > 0.0 && quad.contour_slope < 1.0))
        throw std::invalid_argument(
            "gap_max_matrix_model_beta2: contour slope must be in (0, 1)");

    const double cutoff = 48.0 / quad.contour_slope;

    ContourIntegrand norm_f;
    norm_f.n = q.n;
    norm_f.p = 0;
    ContourIntegrand gap_f = norm_f;
    gap_f.p = q.p;
    gap_f.lambda = q.spectrum.lambdas.data();
    gap_f.t = q.threshold;

    // The normalization integral depends only on (n, slope, tolerance);
    // cache it, since for n = 3 it dominates the cost of every query.
    struct NormEntry {
        Cplx value;
        double unresolved;
    };
    static std::mutex cache_mutex;
    static std::map<std::tuple<int, long, long>, NormEntry> cache;
    const std::tuple<int, long, long> key{
        q.n, std::lround(quad.contour_slope * 1e6),
        std::lround(std::log10(quad.rel_tol) * 1e3)};

    NormEntry norm_entry;
    bool have_norm = false;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) {
            norm_entry = it->second;
            have_norm = true;
        }
    }
    double tol;
    if (!have_norm) {
        // Loose pass to learn the magnitude of the normalization, then a
        // tight pass with tolerance tied to it.
        NestedQuad loose{&norm_f, quad.contour_slope, cutoff, 1e-2,
                         quad.max_depth};
        const double norm_scale = std::max(std::abs(loose.integrate()), 1e-6);
        tol = 0.25 * quad.rel_tol * norm_scale;
        NestedQuad norm_q{&norm_f, quad.contour_slope, cutoff, tol,
                          quad.max_depth};
        norm_entry.value = norm_q.integrate();
        norm_entry.unresolved = norm_q.unresolved;
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(key, norm_entry);
    } else {
        tol = 0.25 * quad.rel_tol * std::abs(norm_entry.value);
    }
    const Cplx norm = norm_entry.value;

    NestedQuad gap_q{&gap_f, quad.contour_slope, cutoff, tol, quad.max_depth};
    const Cplx gap = gap_q.integrate();

    const double unresolved =
        (norm_entry.unresolved + gap_q.unresolved) / std::abs(norm);
    if (unresolved > quad.rel_tol)
        throw RefinementExhausted(
            "gap_max_matrix_model_beta2: refinement exhausted before meeting "
            "tolerance",
            unresolved);

    const Cplx ratio = gap / norm;
    MatrixModelResult out;
    out.value = ratio.real();
    out.imag_residual =
        std::abs(ratio.imag()) / std::max(std::abs(ratio), 1e-300);
    out.est_error = quad.rel_tol + unresolved;
    return out;
}

namespace {

template <typename Matrix>
int pd_indicator(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("positive_definite_indicator: square input");
    const double norm = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * norm)
        throw std::invalid_argument(
            "positive_definite_indicator: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("positive_definite_indicator: eigensolver failed");
    return (solver.eigenvalues().array() > 0.0).all() ? 1 : 0;
}

} // namespace

int positive_definite_indicator(const Eigen::MatrixXd& a) {
    return pd_indicator(a);
}

int positive_definite_indicator(const Eigen::MatrixXcd& a) {
    return pd_indicator(a);
}

} // namespace wedge
