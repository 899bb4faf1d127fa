#include "sliding/rf_sgs.hpp"

#include <chrono>

namespace sliding {

std::pair<Vector, Vector> sgs_inner_loop(const RfSgsParams& params, int k,
                                         const Vector& grad_fx, const Vector& x_prev,
                                         StochasticSubgradOracle& h, const SimpleTerm& chi,
                                         const FeasibleSet& set, const DistanceGenerator& dg,
                                         std::vector<Vector>* u_log) {
    if (!dg.euclidean)
        throw UnsupportedProxError("sgs_inner_loop: only the Euclidean generator ships a prox");

    const std::uint64_t T = params.inner_count(k);
    const double p = params.p_of(k);
    const double beta = params.beta;

    Vector u = x_prev;
    Vector u_avg = x_prev;
    for (std::uint64_t t = 1; t <= T; ++t) {
        const Vector g = grad_fx + h.sample(u);
        Vector u_next = sliding_prox(g, chi, set, beta, x_prev, beta * p, u);
        const double theta = params.theta_of(k, static_cast<int>(t));
        u_avg = (1.0 - theta) * u_avg + theta * u_next;
        u = std::move(u_next);
        if (u_log) u_log->push_back(u);
    }
    return {u, u_avg};
}

RunTrace run_rf_sgs(ProblemSpec& problem, const Vector& x0, int N,
                    const RfSgsParams& params, const SgsOptions& opts) {
    if (N < 0) throw ParamError("run_rf_sgs: N must be >= 0");
    if (!(problem.chi.strong_mu > 0.0))
        throw StrongConvexityRequiredError("run_rf_sgs: chi must be strongly convex");
    if (!problem.set.contains(x0, 1e-9))
        throw ParamError("run_rf_sgs: x0 is not feasible");

    // Fail before running rather than truncate: a clipped schedule would
    // silently void the rate guarantee.
    std::uint64_t planned = 0;
    for (int k = 1; k <= N; ++k) {
        planned += params.inner_count(k);
        if (planned > opts.inner_budget)
            throw BudgetExceededError("run_rf_sgs: schedule needs " + std::to_string(planned) +
                                      "+ inner iterations, budget is " +
                                      std::to_string(opts.inner_budget));
    }

    RunTrace trace;
    trace.rows.reserve(static_cast<std::size_t>(N));

    Vector x = x0;
    Vector x_bar = x0;
    double elapsed = 0.0;

    using clock = std::chrono::steady_clock;
    for (int k = 1; k <= N; ++k) {
        const auto t0 = clock::now();

        const Vector x_under = (1.0 - params.gamma) * x_bar + params.gamma * x;
        const Vector grad_fx = problem.f.grad(x_under);
        auto [x_next, x_tilde] =
            sgs_inner_loop(params, k, grad_fx, x, problem.h, problem.chi, problem.set, problem.dg);
        x = std::move(x_next);
        x_bar = (1.0 - params.gamma) * x_bar + params.gamma * x_tilde;

        elapsed += std::chrono::duration<double>(clock::now() - t0).count();
        if (opts.on_iterate) opts.on_iterate(k, x, x_tilde, x_bar);

        TraceRow row;
        row.k = k;
        row.objective = problem.objective(x_bar);
        if (opts.psi_star) row.objective_gap = row.objective - *opts.psi_star;
        if (opts.record_grad_map) row.grad_map_norm = grad_mapping_norm(problem, x_bar, opts.grad_map_step);
        row.grad_f_count = problem.f.grad_count;
        row.subgrad_h_count = problem.h.subgrad_count;
        row.elapsed_seconds = elapsed;
        trace.rows.push_back(std::move(row));
    }
    return trace;
}

double grad_mapping_norm(const ProblemSpec& problem, const Vector& x, double step) {
    if (step == 0.0) step = 1.0 / problem.f.lipschitz_L;
    if (!(step > 0.0)) throw ParamError("grad_mapping_norm: step must be > 0");
    const Vector v = problem.f.grad_raw(x) + problem.h.exact(x);
    // Standard composite mapping: chi enters the prox scaled by the step, so
    // minimizers of f + h + chi are exactly the zeros of this residual.
    SimpleTerm chi_scaled = problem.chi;
    chi_scaled.strong_mu *= step;
    const Vector u = sliding_prox(step * v, chi_scaled, problem.set, 1.0, x, 0.0, x);
    return (x - u).norm() / step;
}

} // namespace sliding
