#pragma once

#include "sliding/bregman.hpp"
#include "sliding/feasible_set.hpp"
#include "sliding/oracles.hpp"

namespace sliding {

// Structure tag for the nonsmooth term, consumed by the reference solver
// (which needs an exact prox for f's complement, not a stochastic oracle).
enum class NonsmoothStructure {
    Zero,   // h == 0
    L1,     // h(x) = l1_coeff * ||x||_1
};

// A composite problem min_{x in X} f(x) + h(x) + chi(x) with its distance
// generator. Oracles carry their own counters, so a ProblemSpec instance is
// single-owner while a run is in flight.
struct ProblemSpec {
    SmoothOracle f;
    StochasticSubgradOracle h;
    SimpleTerm chi;
    FeasibleSet set;
    DistanceGenerator dg;

    NonsmoothStructure h_structure = NonsmoothStructure::Zero;
    double l1_coeff = 0.0;

    // Exact composite value (noise-free h), used for all reporting.
    double objective(const Vector& x) const {
        return f.value(x) + h.value(x) + chi.eval(x);
    }
};

inline void reset_counters(ProblemSpec& p) {
    reset_counters(p.f);
    reset_counters(p.h);
}

} // namespace sliding
