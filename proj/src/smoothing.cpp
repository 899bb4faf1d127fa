#include "sliding/smoothing.hpp"

#include <cmath>

#include "sliding/rng.hpp"

namespace sliding {

double SaddleSpec::J_eval(const Vector& y) const {
    switch (j_kind) {
        case DualTerm::Zero: return 0.0;
        case DualTerm::Linear: return j_lin.dot(y);
    }
    return 0.0;
}

double SaddleSpec::h_exact(const Vector& x) const {
    // max_{y in box} <Kx - j, y> separates per coordinate.
    Vector z = K_raw(x);
    if (j_kind == DualTerm::Linear) z -= j_lin;
    const double lo = dual_set.lo(), hi = dual_set.hi();
    double s = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) s += std::max(lo * z[i], hi * z[i]);
    return s;
}

Vector SaddleSpec::inner_argmax(const Vector& Kx, double eta) const {
    Vector z = Kx;
    if (j_kind == DualTerm::Linear) z -= j_lin;
    return box_clip(z / (eta * mu_s), dual_set.lo(), dual_set.hi());
}

void reset_counters(SaddleSpec& spec) { spec.K_count = 0; }

namespace {

double smoothed_value(const SaddleSpec& spec, double eta, const Vector& Kx) {
    const Vector y = spec.inner_argmax(Kx, eta);
    return Kx.dot(y) - spec.J_eval(y) - eta * spec.d_eval(y);
}

} // namespace

double SmoothedOracle::value(const Vector& x) const {
    return smoothed_value(*spec, eta, spec->apply_K(x));
}

double SmoothedOracle::value_raw(const Vector& x) const {
    return smoothed_value(*spec, eta, spec->K_raw(x));
}

Vector SmoothedOracle::grad(const Vector& x) const {
    return spec->apply_Kt(spec->inner_argmax(spec->apply_K(x), eta));
}

Vector SmoothedOracle::grad_raw(const Vector& x) const {
    return spec->Kt_raw(spec->inner_argmax(spec->K_raw(x), eta));
}

SmoothedOracle smooth(SaddleSpec& spec, double eta) {
    if (!(eta > 0.0)) throw ParamError("smooth: eta must be > 0");
    if (spec.dual_set.kind() != FeasibleSet::Kind::Box)
        throw UnsupportedSmoothingError("smooth: only box dual sets have a closed-form inner max");
    if (!(spec.dual_set.lo() <= 0.0 && spec.dual_set.hi() >= 0.0))
        throw UnsupportedSmoothingError("smooth: dual box must contain 0 (s is minimized there)");
    if (spec.j_kind == SaddleSpec::DualTerm::Linear && spec.j_lin.size() != spec.dual_dim)
        throw DimensionError("smooth: J coefficient dimension mismatch");
    if (!(spec.mu_s > 0.0)) throw ParamError("smooth: mu_s must be > 0");

    SmoothedOracle o;
    o.spec = &spec;
    o.eta = eta;
    o.L_eta = spec.op_norm_K * spec.op_norm_K / (eta * spec.mu_s);
    return o;
}

std::pair<double, double> choose_eta(double eps, const SaddleSpec& spec) {
    if (!(eps > 0.0)) throw ParamError("choose_eta: eps must be > 0");
    if (!(spec.Omega > 0.0))
        throw ParamError("choose_eta: Omega == 0 (h is affine; smoothing unnecessary)");
    const double eta = eps / (2.0 * spec.Omega);
    const double L_eta = 2.0 * spec.Omega * spec.op_norm_K * spec.op_norm_K / (spec.mu_s * eps);
    return {eta, L_eta};
}

std::pair<bool, bool> sandwich_check(const SaddleSpec& spec, const SmoothedOracle& oracle,
                                     const Vector& x) {
    const double h = spec.h_exact(x);
    const double h_eta = oracle.value_raw(x);
    const bool lo_ok = h_eta <= h + 1e-10;
    const bool hi_ok = h <= h_eta + oracle.eta * spec.Omega + 1e-10;
    return {lo_ok, hi_ok};
}

double power_iteration_norm(const SaddleSpec& spec, int iters, std::uint64_t seed) {
    Vector v = gaussian_vector(spec.primal_dim, seed, 0x706f77ULL);
    v /= v.norm();
    double lambda = 0.0;
    for (int i = 0; i < iters; ++i) {
        Vector w = spec.Kt_raw(spec.K_raw(v));
        lambda = v.dot(w); // Rayleigh quotient for K^T K
        const double n = w.norm();
        if (n == 0.0) return 0.0;
        v = w / n;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

} // namespace sliding
