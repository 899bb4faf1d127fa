#include "sliding/rf_asgs.hpp"

#include <chrono>
#include <cmath>

#include "sliding/reference.hpp"

namespace sliding {

std::pair<Vector, Vector> asgs_inner_loop(const RfAsgsParams& params, const Vector& grad_fx,
                                          const Vector& x_prev, const Vector& xbar_prev,
                                          StochasticSubgradOracle& grad_source,
                                          const FeasibleSet& set, const DistanceGenerator& dg,
                                          std::vector<Vector>* u_log) {
    if (!dg.euclidean)
        throw UnsupportedProxError("asgs_inner_loop: only the Euclidean generator ships a prox");

    const double lambda = params.lambda;
    const double alpha = params.alpha;
    const double beta = params.beta;
    const SimpleTerm chi; // the smoothed problem has chi == 0

    Vector u = x_prev;
    Vector u_avg = xbar_prev;
    for (int t = 1; t <= params.T; ++t) {
        const Vector u_under =
            (1.0 - lambda) * xbar_prev + lambda * (1.0 - alpha) * u_avg + lambda * alpha * u;
        const Vector g = grad_fx + grad_source.sample(u_under);
        Vector u_next = sliding_prox(g, chi, set, beta, x_prev, beta * params.p + params.q_of(t), u);
        u_avg = (1.0 - alpha) * u_avg + alpha * u_next;
        u = std::move(u_next);
        if (u_log) u_log->push_back(u);
    }
    return {u, u_avg};
}

RunTrace run_rf_asgs(SmoothOracle& f, SmoothedOracle& smoothed, const FeasibleSet& set,
                     const Vector& x0, int N, const RfAsgsParams& params,
                     const AsgsOptions& opts, Vector* x_final) {
    if (N < 0) throw ParamError("run_rf_asgs: N must be >= 0");
    if (!set.contains(x0, 1e-9)) throw ParamError("run_rf_asgs: x0 is not feasible");
    const std::uint64_t planned =
        static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(params.T);
    if (planned > opts.inner_budget)
        throw BudgetExceededError("run_rf_asgs: N*T = " + std::to_string(planned) +
                                  " exceeds budget " + std::to_string(opts.inner_budget));

    const DistanceGenerator dg = euclidean_generator(x0.size());

    // All smoothed-gradient samples flow through one stochastic oracle; with
    // sigma = 0 it degenerates to the exact gradient but still counts calls.
    SmoothedOracle* sm = &smoothed;
    StochasticSubgradOracle grad_source =
        make_noisy([sm](const Vector& x) { return sm->grad(x); }, opts.sigma, opts.seed);

    RunTrace trace;
    trace.rows.reserve(static_cast<std::size_t>(N));

    Vector x = x0;
    Vector x_bar = x0;
    double elapsed = 0.0;

    using clock = std::chrono::steady_clock;
    for (int k = 1; k <= N; ++k) {
        const auto t0 = clock::now();

        const Vector x_under = (1.0 - params.gamma) * x_bar + params.gamma * x;
        const Vector grad_fx = f.grad(x_under);
        auto [x_next, x_tilde] = asgs_inner_loop(params, grad_fx, x, x_bar, grad_source, set, dg);
        x = std::move(x_next);
        x_bar = (1.0 - params.gamma) * x_bar + params.gamma * x_tilde;

        elapsed += std::chrono::duration<double>(clock::now() - t0).count();
        if (opts.on_iterate) opts.on_iterate(k, x, x_tilde, x_bar);

        TraceRow row;
        row.k = k;
        row.objective = f.value(x_bar) + smoothed.value_raw(x_bar);
        if (opts.phi_star) row.objective_gap = row.objective - *opts.phi_star;
        if (opts.record_grad_map)
            row.grad_map_norm = smoothed_grad_mapping_norm(f, smoothed, set, x_bar);
        row.grad_f_count = f.grad_count;
        row.subgrad_h_count = grad_source.subgrad_count;
        row.elapsed_seconds = elapsed;
        trace.rows.push_back(std::move(row));
    }
    if (x_final) *x_final = x_bar;
    return trace;
}

std::pair<Vector, RunTrace> solve_spp(SmoothOracle& f, SaddleSpec& spec, const FeasibleSet& set,
                                      const Vector& x0, double eps, double c, double b,
                                      const AsgsOptions& opts) {
    if (!(eps > 0.0)) throw ParamError("solve_spp: eps must be > 0");
    const auto [eta, L_eta] = choose_eta(eps, spec);
    SmoothedOracle smoothed = smooth(spec, eta);
    const RfAsgsParams params = derive_asgs_params(f.lipschitz_L, f.strong_mu, 1.0, L_eta, c, b);

    double A;
    AsgsOptions run_opts = opts;
    if (opts.A_bound) {
        A = *opts.A_bound;
    } else {
        // The rate constant needs phi* and x*. A reference solve at moderate
        // accuracy suffices: with residual cert on a mu-strongly convex
        // objective, phi(x_ref) - phi* <= 2*cert^2/mu and
        // ||x_ref - x*|| <= 2*cert/mu, giving a rigorous upper bound on A.
        const RefSolution ref = solve_reference_smoothed(f, smoothed, set, x0, opts.ref_tol);
        const double mu = f.strong_mu;
        if (!(mu > 0.0)) throw AssumptionViolation("solve_spp: f must be strongly convex");
        const double val_slack = 2.0 * ref.certificate * ref.certificate / mu;
        const double phi0 = f.value(x0) + smoothed.value_raw(x0);
        const double dist = (x0 - ref.x_star).norm() + 2.0 * ref.certificate / mu;
        A = (phi0 - ref.value + val_slack) + 0.5 * mu * dist * dist;
        run_opts.phi_star = ref.value;
    }

    const double half = eps / 2.0;
    int N = 1;
    if (A > half) {
        N = static_cast<int>(std::ceil(std::log(A / half) / std::log(1.0 / (1.0 - params.gamma))));
        N = std::max(1, N);
    }

    Vector x_bar;
    RunTrace trace = run_rf_asgs(f, smoothed, set, x0, N, params, run_opts, &x_bar);
    return {x_bar, trace};
}

double smoothed_grad_mapping_norm(const SmoothOracle& f, const SmoothedOracle& smoothed,
                                  const FeasibleSet& set, const Vector& x, double step) {
    if (step == 0.0) step = 1.0 / (f.lipschitz_L + smoothed.L_eta);
    if (!(step > 0.0)) throw ParamError("smoothed_grad_mapping_norm: step must be > 0");
    const Vector v = f.grad_raw(x) + smoothed.grad_raw(x);
    const Vector u = set.project(x - step * v);
    return (x - u).norm() / step;
}

} // namespace sliding
