#include "sliding/bregman.hpp"

namespace sliding {

DistanceGenerator euclidean_generator(Eigen::Index dim) {
    if (dim < 1) throw ParamError("euclidean_generator: dim must be >= 1");
    DistanceGenerator dg;
    dg.omega = [dim](const Vector& x) {
        if (x.size() != dim) throw DimensionError("omega: wrong dimension");
        return 0.5 * x.squaredNorm();
    };
    dg.grad_omega = [dim](const Vector& x) {
        if (x.size() != dim) throw DimensionError("grad_omega: wrong dimension");
        return x;
    };
    dg.nu = 1.0;
    dg.euclidean = true;
    return dg;
}

double bregman_distance(const DistanceGenerator& dg, const Vector& x, const Vector& z) {
    require_same_dim(x, z, "bregman_distance");
    if (dg.euclidean) return 0.5 * (z - x).squaredNorm();
    return dg.omega(z) - dg.omega(x) - dg.grad_omega(x).dot(z - x);
}

NormPair l2_norm_pair() {
    return {[](const Vector& v) { return v.norm(); },
            [](const Vector& v) { return v.norm(); }};
}

NormPair linf_l1_norm_pair() {
    return {[](const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; },
            [](const Vector& v) { return v.lpNorm<1>(); }};
}

} // namespace sliding
