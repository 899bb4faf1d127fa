#include "sliding/schedule.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sliding {

double RfSgsParams::c_pow_half(int k) const {
    if (k < 0 || k > k_cap)
        throw ParamError("RfSgsParams: k out of range [0, " + std::to_string(k_cap) + "]");
    return std::exp(0.5 * static_cast<double>(k) * std::log(c));
}

std::uint64_t RfSgsParams::inner_count(int k) const {
    const double t = std::ceil(inner_ratio / c_pow_half(k));
    if (!(t >= 1.0)) return 1;
    if (t > 9.0e18) throw BudgetExceededError("RfSgsParams: T_k overflows the iteration budget");
    return static_cast<std::uint64_t>(t);
}

double RfSgsParams::p_of(int k) const {
    return (beta + mu) / beta / c_pow_half(k);
}

double RfSgsParams::theta_of(int k, int t) const {
    if (t < 1) throw ParamError("theta_of: t must be >= 1");
    if (t == 1) return 1.0; // (1-rho)/(1-rho^1) is identically 1
    const double rho = 1.0 / (1.0 + c_pow_half(k));
    return (1.0 - rho) / (1.0 - std::pow(rho, t));
}

RfSgsParams derive_sgs_params(double L, double mu, double nu) {
    if (!(L > 0.0) || !(mu > 0.0) || !(nu > 0.0))
        throw ParamError("derive_sgs_params: L, mu, nu must be > 0");

    const double s = std::sqrt(L / (mu * nu));
    RfSgsParams p;
    p.L = L;
    p.mu = mu;
    p.nu = nu;
    p.c = s / (1.0 + s);
    p.gamma = 1.0 - p.c;
    p.beta = L * p.gamma / nu;

    const double slack = p.c * (p.beta + mu) - p.beta; // equals s*mu/(1+s)^2 > 0
    if (!(slack > 0.0))
        throw ParamError("derive_sgs_params: schedule ill-posed (c(beta+mu) <= beta)");
    p.inner_ratio = (p.beta + mu) * (1.0 - p.c) / slack;
    return p;
}

double ScheduleWeights::w_of(int k, int t) const {
    (void)t;
    const double p = params.p_of(k);
    return (params.beta + params.mu) / (params.beta * (1.0 + p) + params.mu);
}

double ScheduleWeights::W_of(int k, int t) const {
    if (t < 0) throw ParamError("W_of: t must be >= 0");
    const double rho = 1.0 / (1.0 + params.c_pow_half(k));
    return std::pow(rho, t);
}

double ScheduleWeights::Gamma_of(int k) const {
    if (k < 0) throw ParamError("Gamma_of: k must be >= 0");
    return std::pow(params.c, k);
}

int compute_bound_N(double A, double eps, double c) {
    if (!(A > 0.0) || !(eps > 0.0)) throw ParamError("compute_bound_N: A, eps must be > 0");
    if (!(c > 0.0) || c >= 1.0) throw ParamError("compute_bound_N: c must lie in (0,1)");
    if (A <= eps) return 1;
    const double n = std::ceil(2.0 * std::log(A / eps) / std::log(1.0 / c));
    if (n > static_cast<double>(std::numeric_limits<int>::max()))
        throw ParamError("compute_bound_N: N overflows int");
    return std::max(1, static_cast<int>(n));
}

double RfAsgsParams::Lambda_of(int t) const {
    if (t < 1) throw ParamError("Lambda_of: t must be >= 1");
    return std::pow(1.0 - alpha, t - 1);
}

double RfAsgsParams::q_of(int t) const { return b * mu * Lambda_of(t); }

RfAsgsParams derive_asgs_params(double L, double mu, double nu, double L_eta,
                                double c, double b) {
    if (!(L > 0.0) || !(mu > 0.0) || !(nu > 0.0) || !(L_eta > 0.0))
        throw ParamError("derive_asgs_params: constants must be > 0");
    if (L < nu * mu)
        throw AssumptionViolation("derive_asgs_params: L < nu*mu (lambda > 1)");
    if (L_eta < L)
        throw AssumptionViolation("derive_asgs_params: L_eta < L");
    if (!(c > 0.0) || c > 1.5) throw ParamError("derive_asgs_params: c must lie in (0, 3/2]");
    if (b < 0.0 || b > 3.0 / c - 2.0)
        throw ParamError("derive_asgs_params: b must lie in [0, 3/c - 2]");

    RfAsgsParams p;
    p.L = L;
    p.mu = mu;
    p.nu = nu;
    p.L_eta = L_eta;
    p.c = c;
    p.b = b;
    p.lambda = std::sqrt(nu * mu / L);
    p.gamma = c * p.lambda / 3.0;
    p.beta = L * p.gamma / nu;

    const double third = c / 3.0;
    const double ratio = std::log(1.0 - third) / std::log(1.0 - third * std::sqrt(L / L_eta));
    p.T = static_cast<int>(std::ceil(ratio));
    if (p.T < 1) p.T = 1;
    p.alpha = 1.0 - std::pow(1.0 - third, 1.0 / static_cast<double>(p.T));
    p.p = (1.0 - p.alpha) / p.alpha;
    return p;
}

} // namespace sliding
