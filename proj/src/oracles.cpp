#include "sliding/oracles.hpp"

#include <cmath>

namespace sliding {

Vector StochasticSubgradOracle::sample(const Vector& x) {
    ++subgrad_count;
    Vector g = exact_subgrad(x);
    if (noise_sigma > 0.0) {
        const double scale = noise_sigma / std::sqrt(static_cast<double>(x.size()));
        g += scale * rng.next_gaussians(x.size());
    }
    return g;
}

StochasticSubgradOracle make_noisy(std::function<Vector(const Vector&)> exact_subgrad,
                                   double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw ParamError("make_noisy: sigma must be >= 0");
    StochasticSubgradOracle o;
    o.exact_subgrad = std::move(exact_subgrad);
    o.noise_sigma = sigma;
    o.rng = CounterRng(seed, 0);
    return o;
}

StochasticSubgradOracle zero_subgrad_oracle(Eigen::Index dim) {
    StochasticSubgradOracle o;
    o.exact_subgrad = [dim](const Vector&) { return Vector(Vector::Zero(dim)); };
    o.exact_value = [](const Vector&) { return 0.0; };
    return o;
}

SimpleTerm SimpleTerm::quadratic(double mu) {
    if (mu < 0.0) throw ParamError("SimpleTerm::quadratic: mu must be >= 0");
    SimpleTerm t;
    t.kind = Kind::Quadratic;
    t.strong_mu = mu;
    return t;
}

SimpleTerm SimpleTerm::quadratic_plus_constant(double mu, double constant) {
    SimpleTerm t = quadratic(mu);
    t.kind = Kind::QuadraticPlusConstant;
    t.constant = constant;
    return t;
}

double SimpleTerm::eval(const Vector& u) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Quadratic: return 0.5 * strong_mu * u.squaredNorm();
        case Kind::QuadraticPlusConstant: return 0.5 * strong_mu * u.squaredNorm() + constant;
        case Kind::Custom: return custom_eval(u);
    }
    return 0.0;
}

void reset_counters(SmoothOracle& f) { f.grad_count = 0; }

void reset_counters(StochasticSubgradOracle& h) {
    h.subgrad_count = 0;
    h.rng.reset();
}

} // namespace sliding
