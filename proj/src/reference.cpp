#include "sliding/reference.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace sliding {

namespace {

// argmin_u 0.5*||u - z||^2 + s*mu_chi/2*||u||^2 + s*rho*||u||_1 over the set.
// On the simplex the l1 term is constant and drops out; on separable sets it
// soft-thresholds componentwise before the clamp.
Vector composite_prox(const Vector& z, double s_mu, double s_rho, const FeasibleSet& set) {
    switch (set.kind()) {
        case FeasibleSet::Kind::Simplex:
            return simplex_project(z / (1.0 + s_mu));
        case FeasibleSet::Kind::WholeSpace:
        case FeasibleSet::Kind::Box: {
            Vector u(z.size());
            for (Eigen::Index i = 0; i < z.size(); ++i) {
                const double soft = std::copysign(std::max(std::abs(z[i]) - s_rho, 0.0), z[i]);
                u[i] = soft / (1.0 + s_mu);
            }
            return set.kind() == FeasibleSet::Kind::Box ? box_clip(u, set.lo(), set.hi()) : u;
        }
    }
    throw ParamError("composite_prox: unknown set kind");
}

struct ProxGradProblem {
    std::function<Vector(const Vector&)> grad;
    std::function<double(const Vector&)> objective;
    double step = 0.0;
    double s_mu = 0.0;
    double s_rho = 0.0;
    const FeasibleSet* set = nullptr;
};

RefSolution prox_gradient(const ProxGradProblem& p, const Vector& x0, double tol,
                          const RefOptions& opts) {
    if (!(tol > 0.0)) throw ParamError("solve_reference: tol must be > 0");
    Vector x = p.set->project(x0);
    double obj = p.objective(x);
    // Tolerance is relative to 1 + |objective|; the scale is refreshed
    // periodically rather than every step, and re-verified at the stop.
    double scale = 1.0 + std::abs(obj);

    RefSolution sol;
    for (std::uint64_t it = 1; it <= opts.max_iterations; ++it) {
        const Vector z = x - p.step * p.grad(x);
        Vector x_next = composite_prox(z, p.s_mu, p.s_rho, *p.set);
        const double residual = (x - x_next).norm() / p.step;

        if (opts.check_monotone) {
            const double obj_next = p.objective(x_next);
            if (obj_next > obj + 1e-12 * (1.0 + std::abs(obj)))
                throw NoConvergenceError("solve_reference: objective increased");
            obj = obj_next;
        }

        x = std::move(x_next);
        if (residual <= tol * scale) {
            const double value = p.objective(x);
            if (residual <= tol * (1.0 + std::abs(value))) {
                sol.x_star = x;
                sol.value = value;
                sol.certificate = residual;
                sol.iterations = it;
                return sol;
            }
            scale = 1.0 + std::abs(value);
        } else if ((it & 1023u) == 0u) {
            scale = 1.0 + std::abs(p.objective(x));
        }
    }
    throw NoConvergenceError("solve_reference: iteration cap reached");
}

} // namespace

RefSolution solve_reference(const ProblemSpec& problem, const Vector& x0, double tol,
                            const RefOptions& opts) {
    if (problem.h_structure == NonsmoothStructure::L1 && problem.l1_coeff > 0.0 &&
        problem.set.kind() == FeasibleSet::Kind::WholeSpace && problem.chi.strong_mu <= 0.0 &&
        problem.f.strong_mu <= 0.0)
        throw ParamError("solve_reference: unbounded problem (no curvature)");
    if (!problem.chi.prox_friendly())
        throw UnsupportedProxError("solve_reference: chi has no closed-form prox");

    const double step = 1.0 / (problem.f.lipschitz_L + problem.chi.strong_mu);
    ProxGradProblem p;
    p.grad = [&problem](const Vector& x) { return problem.f.grad_raw(x); };
    p.objective = [&problem](const Vector& x) { return problem.objective(x); };
    p.step = step;
    p.s_mu = step * problem.chi.strong_mu;
    p.s_rho = problem.h_structure == NonsmoothStructure::L1 ? step * problem.l1_coeff : 0.0;
    p.set = &problem.set;
    return prox_gradient(p, x0, tol, opts);
}

RefSolution solve_reference_smoothed(const SmoothOracle& f, const SmoothedOracle& smoothed,
                                     const FeasibleSet& set, const Vector& x0, double tol,
                                     const RefOptions& opts) {
    const double step = 1.0 / (f.lipschitz_L + smoothed.L_eta);
    ProxGradProblem p;
    p.grad = [&](const Vector& x) { return (f.grad_raw(x) + smoothed.grad_raw(x)).eval(); };
    p.objective = [&](const Vector& x) { return f.value(x) + smoothed.value_raw(x); };
    p.step = step;
    p.s_mu = 0.0;
    p.s_rho = 0.0;
    p.set = &set;
    return prox_gradient(p, x0, tol, opts);
}

Vector brute_force_simplex_qp(const Matrix& H, const Vector& g) {
    const Eigen::Index n = H.rows();
    if (n > 8) throw SizeError("brute_force_simplex_qp: n must be <= 8");
    if (H.cols() != n || g.size() != n)
        throw DimensionError("brute_force_simplex_qp: shape mismatch");

    auto objective = [&](const Vector& u) { return 0.5 * u.dot(H * u) + g.dot(u); };

    Vector best;
    double best_val = std::numeric_limits<double>::infinity();
    const unsigned full = (1u << n) - 1u;
    for (unsigned mask = 1; mask <= full; ++mask) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        const Eigen::Index m = static_cast<Eigen::Index>(idx.size());

        // Stationarity on the support: H_S u_S + g_S + theta*1 = 0, 1'u_S = 1.
        Matrix kkt(m + 1, m + 1);
        Vector rhs(m + 1);
        for (Eigen::Index a = 0; a < m; ++a) {
            for (Eigen::Index b = 0; b < m; ++b) kkt(a, b) = H(idx[a], idx[b]);
            kkt(a, m) = 1.0;
            kkt(m, a) = 1.0;
            rhs[a] = -g[idx[a]];
        }
        kkt(m, m) = 0.0;
        rhs[m] = 1.0;

        const Vector sol = kkt.fullPivLu().solve(rhs);
        bool feasible = true;
        for (Eigen::Index a = 0; a < m; ++a)
            if (sol[a] < -1e-10) feasible = false;
        if (!feasible) continue;

        Vector u = Vector::Zero(n);
        for (Eigen::Index a = 0; a < m; ++a) u[idx[a]] = std::max(sol[a], 0.0);
        const double val = objective(u);
        if (val < best_val) {
            best_val = val;
            best = u;
        }
    }
    return best;
}

} // namespace sliding
