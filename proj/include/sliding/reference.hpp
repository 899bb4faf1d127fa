#pragma once

#include <cstdint>

#include "sliding/problem.hpp"
#include "sliding/smoothing.hpp"

namespace sliding {

// High-accuracy ground truth for acceptance tests. Plain proximal gradient:
// slower than an accelerated method but monotone, which makes the result
// easy to certify.
struct RefSolution {
    Vector x_star;
    double value = 0.0;
    double certificate = 0.0; // final prox-gradient residual
    std::uint64_t iterations = 0;
};

struct RefOptions {
    std::uint64_t max_iterations = 10'000'000;
    bool check_monotone = false; // evaluates the objective every step (slow)
};

// Deterministic proximal gradient with stepsize 1/(L + mu_chi), stopping at
// residual <= tol * (1 + |objective|). The nonsmooth term is handled through
// its exact prox (constant on the simplex, soft-threshold on separable sets),
// so the problem must carry an h structure tag.
RefSolution solve_reference(const ProblemSpec& problem, const Vector& x0, double tol,
                            const RefOptions& opts = {});

// Same solver on the smoothed composite f + h_eta (chi == 0). Uses the raw
// operator path, so K counters are unaffected.
RefSolution solve_reference_smoothed(const SmoothOracle& f, const SmoothedOracle& smoothed,
                                     const FeasibleSet& set, const Vector& x0, double tol,
                                     const RefOptions& opts = {});

// Exact minimizer of 0.5*u'Hu + g'u over the probability simplex by
// enumerating all 2^n - 1 support sets (n <= 8). Test oracle.
Vector brute_force_simplex_qp(const Matrix& H, const Vector& g);

} // namespace sliding
