#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sliding/problem.hpp"
#include "sliding/prox.hpp"
#include "sliding/schedule.hpp"
#include "sliding/trace.hpp"

namespace sliding {

struct SgsOptions {
    std::uint64_t inner_budget = 10'000'000; // total inner iterations across the run
    std::optional<double> psi_star;          // enables the objective_gap column
    bool record_grad_map = true;
    double grad_map_step = 0.0;              // 0 -> 1/L
    // Observer over (k, x_k, xtilde_k, xbar_k); test hook, may be empty.
    std::function<void(int, const Vector&, const Vector&, const Vector&)> on_iterate;
};

// One inner sweep: T_k prox steps reusing grad_fx = grad f at the current
// extrapolation point, with the stochastic oracle sampled at u_{t-1}.
// Returns (x_k, xtilde_k) = (u_{T_k}, weighted average of the u_t).
// When u_log is non-null every u_t is appended to it (test hook).
std::pair<Vector, Vector> sgs_inner_loop(const RfSgsParams& params, int k,
                                         const Vector& grad_fx, const Vector& x_prev,
                                         StochasticSubgradOracle& h, const SimpleTerm& chi,
                                         const FeasibleSet& set, const DistanceGenerator& dg,
                                         std::vector<Vector>* u_log = nullptr);

// Restart-free stochastic gradient sliding: N outer iterations, each costing
// one grad-f evaluation and T_k stochastic subgradient samples. Trace rows
// are diagnostics and never touch the oracle counters.
RunTrace run_rf_sgs(ProblemSpec& problem, const Vector& x0, int N,
                    const RfSgsParams& params, const SgsOptions& opts = {});

// Composite projected-gradient residual at the given stepsize (default 1/L),
// evaluated with the exact (noise-free) subgradient of h:
//   || x - prox(step * (grad f(x) + h'(x))) || / step.
double grad_mapping_norm(const ProblemSpec& problem, const Vector& x, double step = 0.0);

} // namespace sliding
