#pragma once

#include <cstdint>
#include <functional>

#include "sliding/rng.hpp"
#include "sliding/vec.hpp"

namespace sliding {

// First-order oracle for the smooth component f. grad() is the counted
// oracle call; grad_raw() exists for diagnostics (trace rows, gradient
// mapping) and deliberately bypasses the counter so reported oracle totals
// reflect algorithmic work only.
struct SmoothOracle {
    std::function<double(const Vector&)> value_fn;
    std::function<Vector(const Vector&)> grad_fn;
    double lipschitz_L = 0.0;
    double strong_mu = 0.0;
    std::uint64_t grad_count = 0;

    double value(const Vector& x) const { return value_fn(x); }
    Vector grad(const Vector& x) {
        ++grad_count;
        return grad_fn(x);
    }
    Vector grad_raw(const Vector& x) const { return grad_fn(x); }
};

// Stochastic oracle for the nonsmooth component h: sample() returns the
// exact subgradient plus isotropic Gaussian noise z with E||z||^2 = sigma^2.
// The noise sequence is a pure function of (seed, draw index), never of x.
struct StochasticSubgradOracle {
    std::function<Vector(const Vector&)> exact_subgrad;
    std::function<double(const Vector&)> exact_value; // may be empty
    double lipschitz_M = 0.0;
    double noise_sigma = 0.0;
    CounterRng rng{0, 0};
    std::uint64_t subgrad_count = 0;

    Vector sample(const Vector& x);
    Vector exact(const Vector& x) const { return exact_subgrad(x); }
    double value(const Vector& x) const { return exact_value ? exact_value(x) : 0.0; }
};

StochasticSubgradOracle make_noisy(std::function<Vector(const Vector&)> exact_subgrad,
                                   double sigma, std::uint64_t seed);

// Zero oracle for problems with h == 0 (sample() still counts calls).
StochasticSubgradOracle zero_subgrad_oracle(Eigen::Index dim);

// The simple term chi. Only closed-form prox kinds ship: zero, a quadratic
// (mu/2)*||u||^2, and the same quadratic plus a constant valid on the
// feasible set (e.g. rho*||w||_1 == rho on the simplex).
struct SimpleTerm {
    enum class Kind { Zero, Quadratic, QuadraticPlusConstant, Custom };

    Kind kind = Kind::Zero;
    double strong_mu = 0.0;
    double constant = 0.0;
    std::function<double(const Vector&)> custom_eval; // Kind::Custom only

    static SimpleTerm zero() { return {}; }
    static SimpleTerm quadratic(double mu);
    static SimpleTerm quadratic_plus_constant(double mu, double constant);

    double eval(const Vector& u) const;
    bool prox_friendly() const { return kind != Kind::Custom; }
};

void reset_counters(SmoothOracle& f);
void reset_counters(StochasticSubgradOracle& h);

} // namespace sliding
