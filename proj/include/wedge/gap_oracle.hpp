// Exact beta = 2 gap probabilities for correlated Wishart spectra.
//
// Two independent routes:
//
//  * gap_exact_beta2 -- Andreief reduction of the joint eigenvalue density
//    to a p x p determinant of incomplete-gamma integrals,
//        M(t)_{jk} = int_0^t x^{nu+j-1} e^{-x/Lambda_k} dx
//                  = Lambda_k^{nu+j} gamma_lower(nu+j, t/Lambda_k),
//    normalized by its own t -> infinity limit (so no closed-form constant
//    is ever needed).  Spectra with all eigenvalues equal use the confluent
//    (Hankel) form det[ gamma(nu+j+k-1, t/c) ] instead.
//
//  * gap_max_matrix_model_beta2 -- direct quadrature of the invariant
//    matrix-model integral for the same quantity,
//        E(t) ~ int_{R^n} dY |Delta_n(Y)|^2 exp(tr(iY+1))
//               / [ det^n(iY+1) prod_k det(1 + (iY+1) Lambda_k / t) ],
//    normalized by its t -> infinity limit.  The integrand decays only
//    polynomially along the real axis (for p < n-1 the integral is merely
//    conditionally convergent), so each variable is evaluated on the tilted
//    contour y = xi + i*slope*|xi| -- equal by Cauchy's theorem since all
//    poles sit on the positive imaginary axis at height >= 1 -- where the
//    Fourier factor exp(iy) decays exponentially.  The contour parameter is
//    then mapped to a finite interval and integrated adaptively; the result
//    is real up to quadrature error, which is asserted via the reported
//    imaginary residual.

#pragma once

#include <Eigen/Core>

#include "wedge/ensemble.hpp"

namespace wedge {

enum class GapKind { max_below_t, min_above_s };

struct GapQuery {
    GapKind kind = GapKind::max_below_t;
    double threshold = 1.0;
    int beta = 2;
    EmpiricalSpectrum spectrum;
    int n = 1;
    int p = 1;

    // beta (n - p + 1 - 2/beta) / 2; equals n - p for beta = 2.
    double upsilon() const {
        return beta * (n - p + 1.0 - 2.0 / beta) / 2.0;
    }
    void validate() const;
};

// Exact gap probability (beta = 2, p <= 12).  Eigenvalues must be pairwise
// separated by at least 1e-8 relative, or all exactly equal (confluent
// route); anything in between is refused as ill-conditioned, as is a
// determinant with estimated condition number beyond 1e12.  If est_error is
// given it receives a roundoff estimate (long double vs double evaluation).
double gap_exact_beta2(const GapQuery& q, double* est_error = nullptr);

struct QuadratureSpec {
    double rel_tol = 1e-5;     // relative accuracy target for the ratio
    int max_depth = 22;        // adaptive bisection depth per dimension
    double contour_slope = 0.75; // tilt m in y = xi + i m |xi|, 0 < m < 1
};

struct MatrixModelResult {
    double value = 0.0;
    double imag_residual = 0.0; // |Im| / |value| of the normalized ratio
    double est_error = 0.0;     // quadrature error estimate (relative)
};

// Invariant matrix-model evaluation of the largest-eigenvalue gap
// probability; beta = 2, n <= 3, p <= n.  Throws RefinementExhausted when
// the adaptive quadrature cannot reach tolerance.
MatrixModelResult gap_max_matrix_model_beta2(const GapQuery& q,
                                             const QuadratureSpec& quad = {});

// 1 iff the Hermitian input is positive definite (all eigenvalues > 0).
int positive_definite_indicator(const Eigen::MatrixXd& a);
int positive_definite_indicator(const Eigen::MatrixXcd& a);

} // namespace wedge
