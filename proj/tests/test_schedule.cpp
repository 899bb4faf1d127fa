#include <doctest.h>

#include <cmath>

#include "sliding/schedule.hpp"

using namespace sliding;

TEST_CASE("derive_sgs_params at L=4, mu=1, nu=1") {
    const RfSgsParams p = derive_sgs_params(4.0, 1.0, 1.0);
    CHECK(p.c == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(p.beta == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(p.gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(p.beta == p.L * p.gamma / p.nu); // met with equality by construction
    CHECK(p.c * (p.beta + p.mu) - p.beta > 0.0);
    CHECK(p.inner_count(1) == 5); // ceil(sqrt(3/2) * 3.5) = ceil(4.2866)
    CHECK(p.inner_count(2) == 6); // ceil(1.5 * 3.5) = ceil(5.25)
    for (int k = 1; k <= 30; ++k) CHECK(p.inner_count(k) >= 1);

    CHECK_THROWS_AS(derive_sgs_params(0.0, 1.0, 1.0), ParamError);
    CHECK_THROWS_AS(derive_sgs_params(1.0, -1.0, 1.0), ParamError);
    CHECK_THROWS_AS(derive_sgs_params(1.0, 1.0, 0.0), ParamError);
}

TEST_CASE("p_t and theta_t formulas") {
    const RfSgsParams p = derive_sgs_params(4.0, 1.0, 1.0);
    for (int k = 1; k <= 15; ++k) {
        const double expect_p = (p.beta + p.mu) / p.beta / std::pow(p.c, k / 2.0);
        CHECK(p.p_of(k) == doctest::Approx(expect_p).epsilon(1e-12));
        CHECK(p.theta_of(k, 1) == 1.0); // exactly, by the closed form
        const double rho = 1.0 / (1.0 + std::pow(p.c, k / 2.0));
        for (int t = 2; t <= 10; ++t) {
            const double expect = (1.0 - rho) / (1.0 - std::pow(rho, t));
            CHECK(p.theta_of(k, t) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("schedule weights: recursion, closed form, theta identity") {
    for (double L : {4.0, 100.0}) {
        const RfSgsParams p = derive_sgs_params(L, 1.0, 1.0);
        const ScheduleWeights sw = schedule_weights(p);
        for (int k = 1; k <= 20; ++k) {
            const int T = static_cast<int>(p.inner_count(k));
            double W_rec = 1.0;
            CHECK(sw.W_of(k, 0) == 1.0);
            for (int t = 1; t <= T; ++t) {
                const double w = sw.w_of(k, t);
                CHECK(w == doctest::Approx((p.beta + p.mu) /
                                           (p.beta * (1.0 + p.p_of(k)) + p.mu))
                               .epsilon(1e-12));
                W_rec *= (1.0 - w);
                CHECK(std::abs(sw.W_of(k, t) - W_rec) <= 1e-12);
                const double closed = std::pow(1.0 + std::pow(p.c, k / 2.0), -t);
                CHECK(std::abs(sw.W_of(k, t) - closed) <= 1e-12);
                const double theta = (sw.W_of(k, t - 1) - sw.W_of(k, t)) /
                                     ((1.0 - sw.W_of(k, t)) * sw.W_of(k, t - 1));
                CHECK(std::abs(p.theta_of(k, t) - theta) <= 1e-12);
            }
        }
        // Gamma is the (1-gamma) product with Gamma_0 = 1
        const ScheduleWeights sw2 = schedule_weights(p);
        double G = 1.0;
        for (int k = 1; k <= 25; ++k) {
            G *= (1.0 - p.gamma);
            CHECK(sw2.Gamma_of(k) == doctest::Approx(G).epsilon(1e-12));
        }
    }
}

TEST_CASE("compute_bound_N") {
    CHECK(compute_bound_N(1e4, 1.0, 2.0 / 3.0) == 46);
    CHECK(compute_bound_N(1.0, 1.0, 0.5) == 1);      // A == eps, clamped
    CHECK(compute_bound_N(0.5, 1.0, 0.5) == 1);      // A < eps, clamped
    CHECK(compute_bound_N(std::exp(1.0), 1.0, std::exp(-1.0)) == 2);
    CHECK_THROWS_AS(compute_bound_N(1.0, 1.0, 1.0), ParamError);
    CHECK_THROWS_AS(compute_bound_N(1.0, 1.0, 1.5), ParamError);
    CHECK_THROWS_AS(compute_bound_N(-1.0, 1.0, 0.5), ParamError);
    CHECK_THROWS_AS(compute_bound_N(1.0, 0.0, 0.5), ParamError);
}

TEST_CASE("derive_asgs_params formulas and edge cases") {
    SUBCASE("no smoothing gap collapses to T=1") {
        const RfAsgsParams p = derive_asgs_params(2.0, 1.0, 1.0, 2.0, 1.5, 0.0);
        CHECK(p.T == 1);
        CHECK(p.alpha == doctest::Approx(0.5).epsilon(1e-15)); // c/3
    }
    SUBCASE("experiment defaults") {
        const RfAsgsParams p = derive_asgs_params(1.0, 1.0, 1.0, 100.0, 1.5, 0.0);
        CHECK(p.lambda == 1.0);
        CHECK(p.gamma == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(p.beta == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(p.T == 14); // ceil(log(1/2)/log(1-0.05)) = ceil(13.513)
        CHECK(p.p == doctest::Approx((1.0 - p.alpha) / p.alpha).epsilon(1e-15));
    }
    SUBCASE("Lambda recursion and q_t") {
        const RfAsgsParams p = derive_asgs_params(1.0, 1.0, 1.0, 50.0, 1.0, 0.5);
        CHECK(p.Lambda_of(1) == 1.0);
        double lam = 1.0;
        for (int t = 2; t <= p.T; ++t) {
            lam *= (1.0 - p.alpha);
            CHECK(p.Lambda_of(t) == doctest::Approx(lam).epsilon(1e-13));
            CHECK(p.q_of(t) == doctest::Approx(p.b * p.mu * lam).epsilon(1e-13));
        }
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(derive_asgs_params(0.5, 1.0, 1.0, 10.0), AssumptionViolation); // L < nu*mu
        CHECK_THROWS_AS(derive_asgs_params(2.0, 1.0, 1.0, 1.0), AssumptionViolation);  // L_eta < L
        CHECK_THROWS_AS(derive_asgs_params(1.0, 1.0, 1.0, 10.0, 2.0, 0.0), ParamError);
        CHECK_THROWS_AS(derive_asgs_params(1.0, 1.0, 1.0, 10.0, 1.5, 0.1), ParamError); // b > 3/c-2
        CHECK_THROWS_AS(derive_asgs_params(1.0, 1.0, 1.0, 10.0, 1.0, -0.1), ParamError);
    }
}

TEST_CASE("asgs identity Lambda_T(1-alpha) == 1 - gamma/lambda") {
    for (double L : {1.0, 10.0, 1000.0})
        for (double ratio : {1.0, 16.0, 1e4})
            for (double c : {0.5, 1.0, 1.5}) {
                const RfAsgsParams p = derive_asgs_params(L, 1.0, 1.0, L * ratio, c, 0.0);
                CHECK(std::abs(p.Lambda_of(p.T) * (1.0 - p.alpha) -
                               (1.0 - p.gamma / p.lambda)) <= 1e-12);
                CHECK(p.alpha <= c / 3.0 * std::sqrt(1.0 / ratio) + 1e-12);
            }
}
