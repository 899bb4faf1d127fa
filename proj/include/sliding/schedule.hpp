#pragma once

#include <cstdint>

#include "sliding/errors.hpp"

namespace sliding {

// Parameter schedule of the restart-free sliding method. All quantities are
// derived from the problem constants (L, mu, nu):
//
//   s      = sqrt(L / (mu*nu))
//   c      = s / (1 + s)
//   gamma  = 1 - c
//   beta   = L * gamma / nu
//   T_k    = ceil( c^{-k/2} * (beta+mu)(1-c) / (c(beta+mu) - beta) )
//   p_k    = ((beta+mu)/beta) * c^{-k/2}
//   theta_t = (1 - rho_k) / (1 - rho_k^t),  rho_k = 1 / (1 + c^{k/2})
//
// The geometric growth of T_k replaces the restart phases of multi-phase
// sliding: the inner loop gets longer as the outer iterate improves, and the
// single outer loop contracts at rate c^{1/2} per iteration.
struct RfSgsParams {
    double L = 0.0, mu = 0.0, nu = 0.0;
    double c = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double inner_ratio = 0.0; // (beta+mu)(1-c) / (c(beta+mu) - beta)
    int k_cap = 10000;

    // c^{k/2}, evaluated in log space so large k degrades gracefully.
    double c_pow_half(int k) const;
    std::uint64_t inner_count(int k) const; // T_k
    double p_of(int k) const;               // p_t (depends on k only)
    double theta_of(int k, int t) const;    // theta_t
};

RfSgsParams derive_sgs_params(double L, double mu, double nu);

// Analysis weights w_t, W_t, Gamma_k materialized for invariant testing.
// W uses the closed form rho_k^t; Gamma_k = c^k (the (1-gamma) recursion
// with Gamma_0 = 1).
struct ScheduleWeights {
    RfSgsParams params;

    double w_of(int k, int t) const;
    double W_of(int k, int t) const;
    double Gamma_of(int k) const;
};

inline ScheduleWeights schedule_weights(const RfSgsParams& p) { return {p}; }

// N = ceil(2*log(A/eps) / log(1/c)), clamped to >= 1.
int compute_bound_N(double A, double eps, double c);

// Accelerated-variant schedule for the smoothed problem:
//
//   lambda = sqrt(nu*mu/L), gamma = c*lambda/3, beta = L*gamma/nu
//   T      = ceil( log(1 - c/3) / log(1 - (c/3)*sqrt(L/L_eta)) )
//   alpha  = 1 - (1 - c/3)^{1/T},  p = (1-alpha)/alpha
//   q_t    = b*mu*Lambda_t,  Lambda_t = (1-alpha)^{t-1}
//
// with tuning knobs c in (0, 3/2] and b in [0, 3/c - 2].
struct RfAsgsParams {
    double L = 0.0, mu = 0.0, nu = 0.0, L_eta = 0.0;
    double c = 1.5, b = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    int T = 0;
    double alpha = 0.0;
    double p = 0.0;

    double Lambda_of(int t) const;
    double q_of(int t) const;
};

RfAsgsParams derive_asgs_params(double L, double mu, double nu, double L_eta,
                                double c = 1.5, double b = 0.0);

} // namespace sliding
