#pragma once

#include "sliding/feasible_set.hpp"
#include "sliding/oracles.hpp"

namespace sliding {

// Exact solution of the inner prox subproblem
//
//   argmin_{u in X}  <g, u> + chi(u) + a*V(center_a, u) + b*V(center_b, u)
//
// for the Euclidean Bregman distance V(c, u) = 0.5*||u - c||^2 and the
// shipped chi kinds. Everything reduces to projecting
// (a*center_a + b*center_b - g) / (a + b + mu_chi) onto the set. Inexact
// fallbacks are refused: the convergence analysis assumes this step is exact.
Vector sliding_prox(const Vector& g, const SimpleTerm& chi, const FeasibleSet& set,
                    double a, const Vector& center_a, double b, const Vector& center_b);

} // namespace sliding
