#include <doctest.h>

#include <cmath>

#include "sliding/oracles.hpp"
#include "sliding/rng.hpp"

using namespace sliding;

TEST_CASE("counter rng is a pure function of (seed, index)") {
    CounterRng a(42, 0), b(42, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_gaussian() == b.next_gaussian());

    CHECK(a.gaussian_at(7) == b.gaussian_at(7));
    CHECK(CounterRng(42, 0).gaussian_at(7) == a.gaussian_at(7));
    CHECK(CounterRng(43, 0).gaussian_at(7) != a.gaussian_at(7));
    CHECK(a.split(1).gaussian_at(7) != a.gaussian_at(7));
    CHECK(a.split(1).gaussian_at(3) == b.split(1).gaussian_at(3));
}

TEST_CASE("counter rng moments") {
    CounterRng rng(7, 0);
    double mean = 0.0, var = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        mean += g;
        var += g * g;
    }
    mean /= n;
    var = var / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("make_noisy zero sigma is exact and deterministic") {
    auto sub = [](const Vector& x) { return Vector(2.0 * x); };
    StochasticSubgradOracle o = make_noisy(sub, 0.0, 5);
    Vector x(3);
    x << 1, -2, 3;
    CHECK((o.sample(x) - 2.0 * x).norm() == 0.0);
    CHECK(o.subgrad_count == 1);
    CHECK_THROWS_AS(make_noisy(sub, -1.0, 0), ParamError);
}

TEST_CASE("make_noisy noise scale: E||z||^2 == sigma^2") {
    auto sub = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
    StochasticSubgradOracle o = make_noisy(sub, 1.0, 11);
    const Vector x = Vector::Zero(4);
    double acc = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) acc += o.sample(x).squaredNorm();
    acc /= draws;
    CHECK(acc >= 0.98);
    CHECK(acc <= 1.02);
}

TEST_CASE("make_noisy repeatability and point-independence") {
    auto sub = [](const Vector& x) { return Vector(x); };
    StochasticSubgradOracle a = make_noisy(sub, 0.7, 123);
    StochasticSubgradOracle b = make_noisy(sub, 0.7, 123);
    CounterRng probe(9, 9);
    Vector prev_noise;
    for (int i = 0; i < 20; ++i) {
        const Vector xa = probe.next_gaussians(5);
        const Vector xb = probe.next_gaussians(5);
        const Vector na = a.sample(xa) - xa; // noise only
        const Vector nb = b.sample(xb) - xb;
        CHECK((na - nb).norm() == 0.0); // same draw index -> same noise, any x
    }
    // bitwise repeatability of the full sequence
    StochasticSubgradOracle c = make_noisy(sub, 0.7, 123);
    StochasticSubgradOracle d = make_noisy(sub, 0.7, 123);
    const Vector x0 = Vector::Ones(5);
    for (int i = 0; i < 50; ++i) CHECK((c.sample(x0) - d.sample(x0)).norm() == 0.0);
}

TEST_CASE("law of large numbers sanity for the noise mean") {
    const double sigma = 2.0;
    auto sub = [](const Vector& x) { return Vector(3.0 * x); };
    StochasticSubgradOracle o = make_noisy(sub, sigma, 77);
    const Vector x = Vector::Ones(6);
    Vector acc = Vector::Zero(6);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) acc += o.sample(x) - 3.0 * x;
    acc /= draws;
    CHECK(acc.norm() <= 5.0 * sigma / 100.0);
}

TEST_CASE("oracle counters") {
    SmoothOracle f{[](const Vector& x) { return 0.5 * x.squaredNorm(); },
                   [](const Vector& x) { return x; }, 1.0, 1.0};
    const Vector x = Vector::Ones(2);
    f.grad(x);
    f.grad(x);
    f.grad(x);
    CHECK(f.grad_count == 3);
    f.value(x);     // not an oracle call
    f.grad_raw(x);  // diagnostics are not counted
    CHECK(f.grad_count == 3);
    reset_counters(f);
    CHECK(f.grad_count == 0);
    reset_counters(f);
    CHECK(f.grad_count == 0);
    f.grad(x);
    CHECK(f.grad_count == 1);

    StochasticSubgradOracle h = make_noisy([](const Vector& x) { return x; }, 0.5, 3);
    h.sample(x);
    h.sample(x);
    CHECK(h.subgrad_count == 2);
    h.exact(x); // not counted
    CHECK(h.subgrad_count == 2);
    reset_counters(h);
    CHECK(h.subgrad_count == 0);
}

TEST_CASE("descent lemma sample check on a quadratic") {
    Matrix A(3, 3);
    A << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 2;
    const double L = 5.2; // >= lambda_max(A)
    SmoothOracle f{[&A](const Vector& x) { return 0.5 * x.dot(A * x); },
                   [&A](const Vector& x) { return Vector(A * x); }, L, 0.0};
    CounterRng rng(8, 0);
    for (int i = 0; i < 500; ++i) {
        const Vector x = rng.next_gaussians(3);
        const Vector y = rng.next_gaussians(3);
        const double lhs = f.value(x);
        const double rhs = f.value(y) + f.grad_raw(y).dot(x - y) +
                           0.5 * f.lipschitz_L * (x - y).squaredNorm();
        CHECK(lhs <= rhs + 1e-12);
    }
}
