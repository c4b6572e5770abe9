// Special functions used by the distribution engine and the gap oracles:
// Airy Ai and its derivative, and the regularized incomplete gamma
// functions P(a,x), Q(a,x).

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace wedge {

struct AiryValue {
    double ai;
    double ai_prime;
};

// Ai(s) and Ai'(s) for s in [-15, 15]; absolute error below 1e-12 across the
// range.  Throws std::domain_error outside the supported interval.
AiryValue airy(double s);

namespace detail {
// Same routine without the upper range check; valid for any s >= -15 and
// underflows gracefully to 0 on the far positive side.  Used by quadrature
// code whose nodes can land beyond +15.
AiryValue airy_unchecked(double s);
} // namespace detail

// Regularized incomplete gamma functions, P(a,x) = gamma(a,x)/Gamma(a) and
// Q(a,x) = 1 - P(a,x), for a > 0, x >= 0.  Templated so the determinant
// oracles can run them in long double.
template <typename T>
T regularized_gamma_p(T a, T x);
template <typename T>
T regularized_gamma_q(T a, T x);

namespace detail {

template <typename T>
T lgamma_t(T a) {
    if constexpr (std::is_same_v<T, long double>)
        return std::lgammal(a);
    else
        return std::lgamma(a);
}

// Series for P(a,x), good for x < a + 1.
template <typename T>
T gamma_p_series(T a, T x) {
    T sum = T(1) / a;
    T term = sum;
    for (int n = 1; n < 2000; ++n) {
        term *= x / (a + T(n));
        sum += term;
        if (std::abs(term) < std::abs(sum) * std::numeric_limits<T>::epsilon())
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - lgamma_t(a));
}

// Modified Lentz continued fraction for Q(a,x), good for x >= a + 1.
template <typename T>
T gamma_q_cf(T a, T x) {
    const T tiny = std::numeric_limits<T>::min() / std::numeric_limits<T>::epsilon();
    T b = x + T(1) - a;
    T c = T(1) / tiny;
    T d = T(1) / b;
    T h = d;
    for (int i = 1; i < 2000; ++i) {
        const T an = -T(i) * (T(i) - a);
        b += T(2);
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = T(1) / d;
        const T delta = d * c;
        h *= delta;
        if (std::abs(delta - T(1)) < std::numeric_limits<T>::epsilon())
            break;
    }
    return h * std::exp(-x + a * std::log(x) - lgamma_t(a));
}

} // namespace detail

template <typename T>
T regularized_gamma_p(T a, T x) {
    if (!(a > T(0)) || x < T(0))
        throw std::domain_error("regularized_gamma_p: need a > 0, x >= 0");
    if (x == T(0)) return T(0);
    if (x < a + T(1)) return detail::gamma_p_series(a, x);
    return T(1) - detail::gamma_q_cf(a, x);
}

template <typename T>
T regularized_gamma_q(T a, T x) {
    if (!(a > T(0)) || x < T(0))
        throw std::domain_error("regularized_gamma_q: need a > 0, x >= 0");
    if (x == T(0)) return T(1);
    if (x < a + T(1)) return T(1) - detail::gamma_p_series(a, x);
    return detail::gamma_q_cf(a, x);
}

} // namespace wedge
