// Hastings-McLeod solution of Painleve II,  q'' = s q + 2 q^3,  with
// q(s) ~ Ai(s) as s -> +infinity.  This is the ingredient from which the
// Tracy-Widom distribution functions are assembled.

#pragma once

#include <cstddef>
#include <vector>

namespace wedge {

// Solution sampled on a uniform descending grid, together with the running
// integrals needed downstream.  The weighted integral int_s^inf (x-s) q^2 dx
// is kept as the pair (int x q^2, int q^2) and combined on demand.
struct PainleveSolution {
    std::vector<double> grid;    // descending, grid[0] = s_max
    std::vector<double> q;
    std::vector<double> q_prime;
    std::vector<double> i_q;     // int_s^inf q dx
    std::vector<double> i_q2;    // int_s^inf q^2 dx
    std::vector<double> i_xq2;   // int_s^inf x q^2 dx
    double step = 0.0;

    // int_s^inf (x - s) q^2 dx at grid point i.
    double weighted_q2(std::size_t i) const {
        return i_xq2[i] - grid[i] * i_q2[i];
    }
};

// Left asymptote q ~ sqrt(-s/2) (1 + 1/(8 s^3) - 73/(128 s^6) + ...),
// valid for s <= ~-5; used as the left boundary value and for tail
// continuation of the distribution functions.
double hastings_mcleod_left_asymptote(double s);

// Solve on [s_min, s_max] with grid spacing <= step.  Requires
// s_max >= 6, s_min <= -10, step <= 0.01.  Integrates from s_max downward
// (RK4) for an initial guess, then relaxes the two-point boundary problem
// with a Numerov discretization and Newton iteration; a naive one-way
// shooting would be exponentially unstable on the left half-line.
// Throws std::invalid_argument on bad parameters and std::runtime_error if
// the march blows up (|q| > 1e3), which indicates a step/boundary
// misconfiguration.
PainleveSolution solve_hastings_mcleod(double s_min, double s_max, double step);

} // namespace wedge
