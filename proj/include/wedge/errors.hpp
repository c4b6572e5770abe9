#pragma once

#include <stdexcept>

namespace wedge {

// Eigensolver or structural failure inside a Monte Carlo trial; the harness
// attaches the trial index before propagating.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what, long trial = -1)
        : std::runtime_error(what), trial_(trial) {}
    long trial() const { return trial_; }

private:
    long trial_;
};

// Determinant oracle refused: the spectrum geometry makes the linear algebra
// unreliable (estimated condition number beyond 1e12).
class IllConditionedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of refinement depth before meeting tolerance.
class RefinementExhausted : public std::runtime_error {
public:
    RefinementExhausted(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved_error() const { return achieved_; }

private:
    double achieved_;
};

} // namespace wedge
