// Cubic Hermite interpolation on an ascending grid, with an optional
// Fritsch-Carlson slope limiter to guarantee monotone output for monotone
// data (used for CDF tables).

#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wedge {

class HermiteSpline {
public:
    HermiteSpline() = default;
    HermiteSpline(std::vector<double> x, std::vector<double> y,
                  std::vector<double> dy)
        : x_(std::move(x)), y_(std::move(y)), d_(std::move(dy)) {
        if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != d_.size())
            throw std::invalid_argument("HermiteSpline: bad table sizes");
    }

    // Clamp slopes so a nondecreasing table interpolates monotonically.
    void make_monotone() {
        for (std::size_t i = 0; i < x_.size(); ++i) {
            double cap = 0.0;
            if (i > 0)
                cap = std::max(cap, 3.0 * (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]));
            if (i + 1 < x_.size())
                cap = std::max(cap, 3.0 * (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]));
            d_[i] = std::clamp(d_[i], 0.0, cap);
        }
    }

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

    double operator()(double x) const {
        const std::size_t i = segment(x);
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        return y_[i] * (2.0 * t3 - 3.0 * t2 + 1.0) +
               d_[i] * h * (t3 - 2.0 * t2 + t) +
               y_[i + 1] * (-2.0 * t3 + 3.0 * t2) + d_[i + 1] * h * (t3 - t2);
    }

private:
    std::size_t segment(double x) const {
        if (x <= x_.front()) return 0;
        if (x >= x_.back()) return x_.size() - 2;
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        return static_cast<std::size_t>(it - x_.begin()) - 1;
    }

    std::vector<double> x_, y_, d_;
};

} // namespace wedge
