#pragma once

#include <functional>

#include "sliding/vec.hpp"

namespace sliding {

// Distance generating function omega with strong-convexity modulus nu.
// Only the Euclidean generator ships with a prox solver; the interface
// accepts arbitrary (omega, grad_omega, nu) for diagnostics and testing.
struct DistanceGenerator {
    std::function<double(const Vector&)> omega;
    std::function<Vector(const Vector&)> grad_omega;
    double nu = 1.0;
    bool euclidean = false;
};

// omega(x) = 0.5*||x||^2, grad = identity, nu = 1. The associated Bregman
// distance is exactly 0.5*||z - x||^2.
DistanceGenerator euclidean_generator(Eigen::Index dim);

// V(x, z) = omega(z) - omega(x) - <grad_omega(x), z - x>.
double bregman_distance(const DistanceGenerator& dg, const Vector& x, const Vector& z);

struct NormPair {
    std::function<double(const Vector&)> primal;
    std::function<double(const Vector&)> dual;
};

NormPair l2_norm_pair();
// l-infinity primal with l1 dual, used for the TV dual box.
NormPair linf_l1_norm_pair();

} // namespace sliding
