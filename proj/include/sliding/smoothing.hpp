#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "sliding/feasible_set.hpp"
#include "sliding/vec.hpp"

namespace sliding {

// Bilinear saddle-point data: h(x) = max_{y in Y} [<Kx, y> - J(y)], together
// with the dual prox function d(y) = (mu_s/2)*||y||^2 (Euclidean s minimized
// at 0; the dual box must contain 0).
//
// apply_K / apply_Kt are the counted operator evaluations; the *_raw
// variants are for diagnostics and operator-norm estimation and leave
// K_count untouched.
struct SaddleSpec {
    enum class DualTerm { Zero, Linear };

    Eigen::Index primal_dim = 0;
    Eigen::Index dual_dim = 0;
    std::function<Vector(const Vector&)> K_raw;
    std::function<Vector(const Vector&)> Kt_raw;
    double op_norm_K = 0.0;
    FeasibleSet dual_set = FeasibleSet::box(-1.0, 1.0, 1);
    DualTerm j_kind = DualTerm::Zero;
    Vector j_lin; // J(y) = <j_lin, y> when j_kind == Linear
    double mu_s = 1.0;
    double Omega = 0.0; // max_{y in Y} d(y), computed from the box
    std::uint64_t K_count = 0;

    Vector apply_K(const Vector& x) {
        ++K_count;
        return K_raw(x);
    }
    Vector apply_Kt(const Vector& y) {
        ++K_count;
        return Kt_raw(y);
    }

    double J_eval(const Vector& y) const;
    double d_eval(const Vector& y) const { return 0.5 * mu_s * y.squaredNorm(); }
    // Exact h(x) = max over the dual box (closed form), for sandwich tests.
    double h_exact(const Vector& x) const;
    // Maximizer of <z,y> - J(y) - eta*d(y) over the dual box.
    Vector inner_argmax(const Vector& Kx, double eta) const;
};

void reset_counters(SaddleSpec& spec);

// Smoothed oracle h_eta with L_eta = ||K||^2 / (eta * mu_s). value()/grad()
// cost one / two K-operator applications and are counted on the spec;
// *_raw bypass the counter.
struct SmoothedOracle {
    SaddleSpec* spec = nullptr;
    double eta = 0.0;
    double L_eta = 0.0;

    double value(const Vector& x) const;
    Vector grad(const Vector& x) const;
    double value_raw(const Vector& x) const;
    Vector grad_raw(const Vector& x) const;
};

SmoothedOracle smooth(SaddleSpec& spec, double eta);

// eta = eps / (2*Omega) and the matching L_eta.
std::pair<double, double> choose_eta(double eps, const SaddleSpec& spec);

// Verifies h_eta(x) <= h(x) <= h_eta(x) + eta*Omega at x (with 1e-10 slack).
std::pair<bool, bool> sandwich_check(const SaddleSpec& spec, const SmoothedOracle& oracle,
                                     const Vector& x);

// ||K|| estimate: power iteration on K^T K from a seeded start. Uses the raw
// operator handles, so K_count is unaffected.
double power_iteration_norm(const SaddleSpec& spec, int iters = 200, std::uint64_t seed = 0);

// The smoothed absolute value that h_eta reduces to for a [-1,1] dual box.
inline double huber(double t, double eta) {
    const double a = std::abs(t);
    return a <= eta ? t * t / (2.0 * eta) : a - eta / 2.0;
}

} // namespace sliding
