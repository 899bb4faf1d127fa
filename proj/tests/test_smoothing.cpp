#include <doctest.h>

#include <cmath>

#include "sliding/problems.hpp"
#include "sliding/rng.hpp"
#include "sliding/smoothing.hpp"

using namespace sliding;

TEST_CASE("huber closed form") {
    CHECK(huber(0.5, 1.0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(huber(2.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(huber(-2.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(huber(0.0, 0.3) == 0.0);
}

TEST_CASE("choose_eta") {
    SaddleSpec spec;
    spec.op_norm_K = std::sqrt(8.0);
    spec.mu_s = 1.0;
    spec.Omega = 8192.0;
    const auto [eta, L_eta] = choose_eta(1e-3, spec);
    CHECK(eta == doctest::Approx(1e-3 / 16384.0).epsilon(1e-14));
    CHECK(L_eta == doctest::Approx(1.31072e8).epsilon(1e-12));
    CHECK(L_eta * eta * spec.mu_s == doctest::Approx(8.0).epsilon(1e-12));

    spec.op_norm_K = 1.0;
    spec.Omega = 1.0;
    const auto [eta2, L2] = choose_eta(2.0, spec);
    CHECK(eta2 == 1.0);
    CHECK(L2 == 1.0);

    spec.Omega = 0.0;
    CHECK_THROWS_AS(choose_eta(1.0, spec), ParamError);
    spec.Omega = 1.0;
    CHECK_THROWS_AS(choose_eta(0.0, spec), ParamError);
}

TEST_CASE("smoothed oracle equals the huber sum on the TV spec") {
    auto [inst, spec, f] = make_tv(6, 5, 1.0, 0.05, 3);
    (void)inst;
    (void)f;
    const double eta = 0.37;
    const SmoothedOracle sm = smooth(spec, eta);
    CHECK(sm.L_eta == doctest::Approx(8.0 / eta).epsilon(1e-13));

    CounterRng rng(21, 0);
    for (int i = 0; i < 200; ++i) {
        const Vector x = rng.next_gaussians(spec.primal_dim);
        const Vector Kx = spec.K_raw(x);
        double expect = 0.0;
        for (Eigen::Index j = 0; j < Kx.size(); ++j) expect += huber(Kx[j], eta);
        CHECK(sm.value_raw(x) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("smoothed gradient matches central finite differences") {
    auto [inst, spec, f] = make_tv(4, 4, 1.0, 0.05, 5);
    (void)inst;
    (void)f;
    const SmoothedOracle sm = smooth(spec, 0.5);
    CounterRng rng(22, 0);
    for (int i = 0; i < 100; ++i) {
        const Vector x = rng.next_gaussians(spec.primal_dim);
        const Vector g = sm.grad_raw(x);
        Vector fd(x.size());
        const double delta = 1e-6;
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            Vector xp = x, xm = x;
            xp[j] += delta;
            xm[j] -= delta;
            fd[j] = (sm.value_raw(xp) - sm.value_raw(xm)) / (2.0 * delta);
        }
        CHECK((g - fd).norm() <= 1e-5 * (1.0 + g.norm()));
    }
}

TEST_CASE("sandwich bounds h_eta <= h <= h_eta + eta*Omega") {
    auto [inst, spec, f] = make_tv(8, 8, 1.0, 0.05, 7);
    (void)inst;
    (void)f;
    for (double eta : {0.01, 0.2, 1.0}) {
        const SmoothedOracle sm = smooth(spec, eta);
        CounterRng rng(23, 0);
        for (int i = 0; i < 1000; ++i) {
            const Vector x = rng.next_gaussians(spec.primal_dim);
            const auto [lo_ok, hi_ok] = sandwich_check(spec, sm, x);
            CHECK(lo_ok);
            CHECK(hi_ok);
        }
    }
    // x = 0: h(0) = 0 and h_eta(0) >= -eta*Omega
    const SmoothedOracle sm = smooth(spec, 0.1);
    const Vector zero = Vector::Zero(spec.primal_dim);
    CHECK(spec.h_exact(zero) == 0.0);
    CHECK(sm.value_raw(zero) >= -0.1 * spec.Omega - 1e-12);
}

TEST_CASE("smoothed gradient Lipschitz bound") {
    auto [inst, spec, f] = make_tv(6, 6, 1.0, 0.05, 9);
    (void)inst;
    (void)f;
    const SmoothedOracle sm = smooth(spec, 0.05);
    CounterRng rng(24, 0);
    for (int i = 0; i < 1000; ++i) {
        const Vector x = rng.next_gaussians(spec.primal_dim);
        const Vector y = rng.next_gaussians(spec.primal_dim);
        const double num = (sm.grad_raw(x) - sm.grad_raw(y)).norm();
        CHECK(num <= sm.L_eta * (x - y).norm() * (1.0 + 1e-6));
    }
}

TEST_CASE("power iteration stays below the analytic operator norm") {
    for (Eigen::Index side : {2, 8, 16, 32}) {
        auto [inst, spec, f] = make_tv(side, side, 1.0, 0.0, 1);
        (void)inst;
        (void)f;
        const double est = power_iteration_norm(spec, 200, 17);
        CHECK(est * est <= 8.0 + 1e-6);
        if (side == 32) CHECK(est * est >= 7.5);
    }
}

TEST_CASE("adjoint identity through the counted interface") {
    auto [inst, spec, f] = make_tv(5, 4, 1.0, 0.0, 2);
    (void)inst;
    (void)f;
    CounterRng rng(25, 0);
    for (int i = 0; i < 100; ++i) {
        const Vector u = rng.next_gaussians(spec.primal_dim);
        const Vector p = rng.next_gaussians(spec.dual_dim);
        CHECK(std::abs(spec.apply_K(u).dot(p) - u.dot(spec.apply_Kt(p))) <= 1e-10);
    }
    CHECK(spec.K_count == 200); // one per apply
    reset_counters(spec);
    CHECK(spec.K_count == 0);
}

TEST_CASE("K-operator counting: value costs 1, grad costs 2, raw costs 0") {
    auto [inst, spec, f] = make_tv(4, 4, 1.0, 0.0, 2);
    (void)inst;
    (void)f;
    const SmoothedOracle sm = smooth(spec, 0.5);
    const Vector x = Vector::Ones(spec.primal_dim);
    reset_counters(spec);
    sm.value(x);
    CHECK(spec.K_count == 1);
    sm.grad(x);
    CHECK(spec.K_count == 3);
    sm.value_raw(x);
    sm.grad_raw(x);
    CHECK(spec.K_count == 3);
}

TEST_CASE("unsupported smoothing configurations are refused") {
    auto [inst, spec, f] = make_tv(4, 4, 1.0, 0.0, 2);
    (void)inst;
    (void)f;
    CHECK_THROWS_AS(smooth(spec, 0.0), ParamError);
    SaddleSpec bad = spec;
    bad.dual_set = FeasibleSet::simplex(bad.dual_dim);
    CHECK_THROWS_AS(smooth(bad, 0.1), UnsupportedSmoothingError);
    SaddleSpec shifted = spec;
    shifted.dual_set = FeasibleSet::box(0.5, 1.0, shifted.dual_dim);
    CHECK_THROWS_AS(smooth(shifted, 0.1), UnsupportedSmoothingError);
}

TEST_CASE("linear dual term shifts the clip") {
    auto [inst, spec, f] = make_tv(3, 3, 1.0, 0.0, 2);
    (void)inst;
    (void)f;
    SaddleSpec lin = spec;
    lin.j_kind = SaddleSpec::DualTerm::Linear;
    lin.j_lin = Vector::Constant(lin.dual_dim, 0.25);
    const double eta = 0.4;
    const SmoothedOracle sm = smooth(lin, eta);
    CounterRng rng(26, 0);
    for (int i = 0; i < 50; ++i) {
        const Vector x = rng.next_gaussians(lin.primal_dim);
        const Vector z = lin.K_raw(x) - lin.j_lin;
        double expect = 0.0;
        for (Eigen::Index j = 0; j < z.size(); ++j) expect += huber(z[j], eta);
        // <Kx, y*> - <j, y*> - eta/2 ||y*||^2 with y* = clip((Kx - j)/eta)
        CHECK(sm.value_raw(x) == doctest::Approx(expect).epsilon(1e-12));
    }
}
