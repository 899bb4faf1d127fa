#include <doctest.h>

#include <cmath>

#include "sliding/problems.hpp"
#include "sliding/reference.hpp"
#include "sliding/rf_sgs.hpp"
#include "sliding/rng.hpp"

using namespace sliding;

namespace {

struct QpFixture {
    ProblemSpec problem;
    RfSgsParams params;
    Vector x0;
};

QpFixture qp_fixture(Eigen::Index n, double L, double rho, std::uint64_t seed) {
    auto [qp, problem] = make_qp(n, 1.0, L, rho, FeasibleSet::Kind::Simplex, seed);
    (void)qp;
    return {std::move(problem), derive_sgs_params(L, 1.0, 1.0),
            Vector::Constant(n, 1.0 / static_cast<double>(n))};
}

} // namespace

TEST_CASE("N=0 gives an empty trace and no oracle calls") {
    QpFixture fx = qp_fixture(6, 10.0, 0.1, 2);
    const RunTrace trace = run_rf_sgs(fx.problem, fx.x0, 0, fx.params);
    CHECK(trace.empty());
    CHECK(fx.problem.f.grad_count == 0);
    CHECK(fx.problem.h.subgrad_count == 0);
}

TEST_CASE("oracle counts match the schedule exactly") {
    QpFixture fx = qp_fixture(6, 10.0, 0.1, 2);
    const int N = 20;
    SgsOptions opts;
    opts.record_grad_map = false;
    const RunTrace trace = run_rf_sgs(fx.problem, fx.x0, N, fx.params, opts);
    CHECK(fx.problem.f.grad_count == static_cast<std::uint64_t>(N));

    std::uint64_t expect = 0;
    const double R = (fx.params.beta + fx.params.mu) * (1.0 - fx.params.c) /
                     (fx.params.c * (fx.params.beta + fx.params.mu) - fx.params.beta);
    for (int k = 1; k <= N; ++k) {
        expect += static_cast<std::uint64_t>(std::ceil(std::pow(fx.params.c, -k / 2.0) * R));
        CHECK(trace.rows[static_cast<std::size_t>(k - 1)].grad_f_count ==
              static_cast<std::uint64_t>(k));
    }
    CHECK(fx.problem.h.subgrad_count == expect);
    CHECK(trace.back().subgrad_h_count == expect);
    // counts are nondecreasing in k
    for (std::size_t i = 1; i < trace.size(); ++i)
        CHECK(trace.rows[i].subgrad_h_count >= trace.rows[i - 1].subgrad_h_count);
}

TEST_CASE("T=1 inner loop returns u_1 (theta_1 == 1)") {
    QpFixture fx = qp_fixture(4, 5.0, 0.0, 3);
    RfSgsParams p = fx.params;
    p.inner_ratio = 1e-9; // forces T_k == 1
    CHECK(p.inner_count(1) == 1);
    const Vector gfx = fx.problem.f.grad(fx.x0);
    std::vector<Vector> u_log;
    auto [x1, xt1] = sgs_inner_loop(p, 1, gfx, fx.x0, fx.problem.h, fx.problem.chi,
                                    fx.problem.set, fx.problem.dg, &u_log);
    REQUIRE(u_log.size() == 1);
    CHECK((xt1 - u_log[0]).norm() == 0.0);
    CHECK((x1 - u_log[0]).norm() == 0.0);
}

TEST_CASE("inner prox steps match the closed-form quadratic recursion") {
    // sigma = 0, h == 0, chi = mu/2 ||u||^2 over the whole space.
    const Eigen::Index n = 5;
    const double mu = 0.7;
    ProblemSpec problem{
        SmoothOracle{[](const Vector& x) { return 0.5 * x.squaredNorm(); },
                     [](const Vector& x) { return x; }, 1.0, 0.0},
        zero_subgrad_oracle(n),
        SimpleTerm::quadratic(mu),
        FeasibleSet::whole_space(n),
        euclidean_generator(n),
        NonsmoothStructure::Zero,
        0.0,
    };
    const RfSgsParams params = derive_sgs_params(1.0, mu, 1.0);
    CounterRng rng(12, 0);
    const Vector x_prev = rng.next_gaussians(n);
    const Vector gfx = rng.next_gaussians(n);

    const int k = 2;
    std::vector<Vector> u_log;
    sgs_inner_loop(params, k, gfx, x_prev, problem.h, problem.chi, problem.set, problem.dg,
                   &u_log);

    const double beta = params.beta, p = params.p_of(k);
    Vector u = x_prev;
    for (const Vector& u_impl : u_log) {
        const Vector u_hand = (beta * x_prev + beta * p * u - gfx) / (beta * (1.0 + p) + mu);
        CHECK((u_impl - u_hand).norm() <= 1e-12 * (1.0 + u_hand.norm()));
        u = u_impl;
    }
}

TEST_CASE("averaged inner iterate equals the weighted sum of u_t") {
    QpFixture fx = qp_fixture(6, 25.0, 0.1, 5);
    fx.problem.h.noise_sigma = 0.5;
    const int k = 4;
    const Vector gfx = fx.problem.f.grad(fx.x0);
    std::vector<Vector> u_log;
    auto [xk, xtk] = sgs_inner_loop(fx.params, k, gfx, fx.x0, fx.problem.h, fx.problem.chi,
                                    fx.problem.set, fx.problem.dg, &u_log);
    (void)xk;
    const ScheduleWeights sw = schedule_weights(fx.params);
    const int T = static_cast<int>(u_log.size());
    Vector acc = Vector::Zero(6);
    for (int t = 1; t <= T; ++t)
        acc += sw.w_of(k, t) / sw.W_of(k, t) * u_log[static_cast<std::size_t>(t - 1)];
    const double WT = sw.W_of(k, T);
    CHECK((xtk - WT / (1.0 - WT) * acc).norm() <= 1e-10);
}

TEST_CASE("deterministic rate bound on a small simplex QP") {
    QpFixture fx = qp_fixture(8, 30.0, 0.1, 7);
    const RefSolution ref = solve_reference(fx.problem, fx.x0, 1e-11);

    const double M = fx.problem.h.lipschitz_M;
    const double bm = fx.params.beta + fx.params.mu;
    const double A = (fx.problem.objective(fx.x0) - ref.value) +
                     bm * (1.0 - fx.params.c) * 0.5 * (fx.x0 - ref.x_star).squaredNorm() +
                     2.0 * M * M / (fx.params.nu * bm);

    SgsOptions opts;
    opts.psi_star = ref.value;
    const RunTrace trace = run_rf_sgs(fx.problem, fx.x0, 30, fx.params, opts);
    for (const TraceRow& row : trace.rows) {
        CHECK(*row.objective_gap <= std::pow(fx.params.c, row.k / 2.0) * A + 1e-9);
        CHECK(row.grad_map_norm >= 0.0);
    }
}

TEST_CASE("stochastic runs are reproducible per seed") {
    QpFixture a = qp_fixture(6, 10.0, 0.1, 2);
    QpFixture b = qp_fixture(6, 10.0, 0.1, 2);
    a.problem.h.noise_sigma = b.problem.h.noise_sigma = 1.0;
    a.problem.h.rng = CounterRng(99, 1);
    b.problem.h.rng = CounterRng(99, 1);
    SgsOptions opts;
    opts.record_grad_map = false;
    const RunTrace ta = run_rf_sgs(a.problem, a.x0, 12, a.params, opts);
    const RunTrace tb = run_rf_sgs(b.problem, b.x0, 12, b.params, opts);
    for (std::size_t i = 0; i < ta.size(); ++i)
        CHECK(ta.rows[i].objective == tb.rows[i].objective);

    QpFixture c = qp_fixture(6, 10.0, 0.1, 2);
    c.problem.h.noise_sigma = 1.0;
    c.problem.h.rng = CounterRng(100, 1);
    const RunTrace tc = run_rf_sgs(c.problem, c.x0, 12, c.params, opts);
    CHECK(tc.back().objective != ta.back().objective);
}

TEST_CASE("gradient mapping norm") {
    SUBCASE("unconstrained smooth problem reduces to the gradient norm") {
        const Eigen::Index n = 4;
        ProblemSpec problem{
            SmoothOracle{[](const Vector& x) { return 0.5 * x.squaredNorm(); },
                         [](const Vector& x) { return x; }, 1.0, 0.0},
            zero_subgrad_oracle(n),
            SimpleTerm::quadratic(1e-9), // required by run, not by the mapping
            FeasibleSet::whole_space(n),
            euclidean_generator(n),
            NonsmoothStructure::Zero,
            0.0,
        };
        problem.chi = SimpleTerm::zero();
        CounterRng rng(13, 0);
        for (int i = 0; i < 50; ++i) {
            const Vector x = rng.next_gaussians(n);
            CHECK(std::abs(grad_mapping_norm(problem, x, 0.25) - x.norm()) <=
                  1e-10 * (1.0 + x.norm()));
            CHECK(grad_mapping_norm(problem, x) >= 0.0);
        }
    }
    SUBCASE("vanishes at the reference optimum (rho = 0)") {
        auto [qp, problem] = make_qp(6, 1.0, 20.0, 0.0, FeasibleSet::Kind::Simplex, 4);
        (void)qp;
        const RefSolution ref = solve_reference(problem, Vector::Constant(6, 1.0 / 6.0), 1e-12);
        CHECK(grad_mapping_norm(problem, ref.x_star) <= 1e-6);
    }
}

TEST_CASE("guards") {
    QpFixture fx = qp_fixture(5, 10.0, 0.1, 2);

    SUBCASE("budget") {
        SgsOptions opts;
        opts.inner_budget = 3;
        CHECK_THROWS_AS(run_rf_sgs(fx.problem, fx.x0, 5, fx.params, opts), BudgetExceededError);
    }
    SUBCASE("strong convexity required") {
        fx.problem.chi = SimpleTerm::zero();
        CHECK_THROWS_AS(run_rf_sgs(fx.problem, fx.x0, 2, fx.params),
                        StrongConvexityRequiredError);
    }
    SUBCASE("infeasible start") {
        CHECK_THROWS_AS(run_rf_sgs(fx.problem, Vector::Constant(5, 1.0), 2, fx.params),
                        ParamError);
    }
    SUBCASE("negative N") {
        CHECK_THROWS_AS(run_rf_sgs(fx.problem, fx.x0, -1, fx.params), ParamError);
    }
}

TEST_CASE("iterates stay feasible") {
    QpFixture fx = qp_fixture(7, 40.0, 0.2, 8);
    fx.problem.h.noise_sigma = 0.8;
    double worst = 0.0;
    SgsOptions opts;
    opts.record_grad_map = false;
    opts.on_iterate = [&](int, const Vector& x, const Vector& xt, const Vector& xb) {
        worst = std::max({worst, fx.problem.set.violation(x), fx.problem.set.violation(xt),
                          fx.problem.set.violation(xb)});
    };
    run_rf_sgs(fx.problem, fx.x0, 20, fx.params, opts);
    CHECK(worst <= 1e-10);
}
