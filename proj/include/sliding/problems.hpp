#pragma once

#include <string>
#include <tuple>

#include "sliding/problem.hpp"
#include "sliding/smoothing.hpp"

namespace sliding {

// min_{w in simplex} (tau/2) w'Sigma w - q'w + rho*||w||_1 with
// Sigma = Sigma0 + mu_reg*I. Sigma0 comes from a seeded factor model with
// its spectrum rescaled to condition number ~8000 (max eigenvalue 0.4), so
// that adding mu_reg = 0.1 brings the condition number down to ~5.
struct PortfolioInstance {
    Eigen::Index n = 0;
    Matrix Sigma0;
    Vector q_returns;
    double tau = 1.0;
    double rho = 0.0;
    double mu_reg = 0.1;
    std::uint64_t seed = 0;
};

std::pair<PortfolioInstance, ProblemSpec> make_portfolio(Eigen::Index n, std::uint64_t seed,
                                                         double tau = 1.0, double rho = 0.01,
                                                         double mu_reg = 0.1);

// TV denoising saddle-point instance: f(u) = (tau/2)||u - g||^2 and
// h(u) = ||Ku||_1 expressed through the dual box, with K the Neumann
// forward-difference operator (||K|| = sqrt(8)).
struct TvInstance {
    Eigen::Index width = 0, height = 0;
    Vector g; // noisy image, row-major, intensities in [0,1]
    double tau = 1.0;
    double sigma_noise = 0.0;
    std::uint64_t seed = 0;
};

std::tuple<TvInstance, SaddleSpec, SmoothOracle> make_tv(Eigen::Index width, Eigen::Index height,
                                                         double tau, double sigma_noise,
                                                         std::uint64_t seed,
                                                         const std::string& pgm_path = "");

// Synthetic QP with prescribed spectrum: f(x) = 0.5 x'Ax - b'x (+ rho*||x||_1)
// with eig(A) spanning [mu_f, L_f] exactly. Strong convexity is shifted from
// f into chi so the sliding algorithms apply verbatim.
struct SyntheticQp {
    Eigen::Index n = 0;
    Matrix A;
    Vector b;
    double rho_l1 = 0.0;
    double mu_f = 0.0, L_f = 0.0;
    std::uint64_t seed = 0;
};

std::pair<SyntheticQp, ProblemSpec> make_qp(Eigen::Index n, double mu_f, double L_f,
                                            double rho_l1, FeasibleSet::Kind set_kind,
                                            std::uint64_t seed);

// Composite spec for an explicit 0.5 x'Ax - b'x + rho*||x||_1 instance with
// the given curvature bounds (the shift into chi applied as in make_qp).
ProblemSpec qp_problem_spec(const Matrix& A, const Vector& b, double rho_l1, double mu_f,
                            double L_f, FeasibleSet set, std::uint64_t seed = 0);

// Deterministic piecewise-constant test image (blocks + disk), in [0,1].
Vector phantom_image(Eigen::Index width, Eigen::Index height);

// Binary PGM (P5), maxval 255, row-major.
void write_pgm(const Vector& image, Eigen::Index width, Eigen::Index height,
               const std::string& path);
std::tuple<Vector, Eigen::Index, Eigen::Index> read_pgm(const std::string& path);

// The forward-difference operator used by make_tv, exposed for tests.
Vector tv_apply_K(const Vector& u, Eigen::Index width, Eigen::Index height);
Vector tv_apply_Kt(const Vector& p, Eigen::Index width, Eigen::Index height);

} // namespace sliding
