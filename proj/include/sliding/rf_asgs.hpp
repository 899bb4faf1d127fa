#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sliding/oracles.hpp"
#include "sliding/prox.hpp"
#include "sliding/schedule.hpp"
#include "sliding/smoothing.hpp"
#include "sliding/trace.hpp"

namespace sliding {

struct AsgsOptions {
    std::uint64_t inner_budget = 10'000'000;
    std::optional<double> phi_star; // enables the objective_gap column
    bool record_grad_map = true;
    double sigma = 0.0;             // gradient-noise level for the stochastic variant
    std::uint64_t seed = 0;
    std::optional<double> A_bound;  // solve_spp: caller-supplied rate constant
    double ref_tol = 1e-6;          // solve_spp: reference solve accuracy when A is absent
    // Observer over (k, x_k, xtilde_k, xbar_k); test hook, may be empty.
    std::function<void(int, const Vector&, const Vector&, const Vector&)> on_iterate;
};

// One accelerated inner sweep: T prox steps coupling u_t with the running
// average through the extrapolation point where the smoothed gradient is
// sampled. grad_source must return (an unbiased sample of) grad h_eta.
// Returns (x_k, xtilde_k) = (u_T, utilde_T).
std::pair<Vector, Vector> asgs_inner_loop(const RfAsgsParams& params, const Vector& grad_fx,
                                          const Vector& x_prev, const Vector& xbar_prev,
                                          StochasticSubgradOracle& grad_source,
                                          const FeasibleSet& set, const DistanceGenerator& dg,
                                          std::vector<Vector>* u_log = nullptr);

// Restart-free accelerated stochastic gradient sliding on the smoothed
// problem min f + h_eta. Costs exactly N grad-f evaluations and N*T smoothed
// gradient samples (2*N*T K-operator applications for the shipped specs).
// When x_final is non-null it receives the returned point xbar_N.
RunTrace run_rf_asgs(SmoothOracle& f, SmoothedOracle& smoothed, const FeasibleSet& set,
                     const Vector& x0, int N, const RfAsgsParams& params,
                     const AsgsOptions& opts = {}, Vector* x_final = nullptr);

// End-to-end eps-solution of the saddle-point problem: eta = eps/(2*Omega),
// (1-gamma)^N * A <= eps/2 picks N, then one run. When no A bound is given
// the smoothed problem is reference-solved first to compute it.
std::pair<Vector, RunTrace> solve_spp(SmoothOracle& f, SaddleSpec& spec, const FeasibleSet& set,
                                      const Vector& x0, double eps, double c = 1.5,
                                      double b = 0.0, const AsgsOptions& opts = {});

// Composite residual for the smoothed problem at the given step
// (default 1/(L_f + L_eta)), computed through the uncounted operator path.
double smoothed_grad_mapping_norm(const SmoothOracle& f, const SmoothedOracle& smoothed,
                                  const FeasibleSet& set, const Vector& x, double step = 0.0);

} // namespace sliding
