#include "sliding/prox.hpp"

namespace sliding {

Vector sliding_prox(const Vector& g, const SimpleTerm& chi, const FeasibleSet& set,
                    double a, const Vector& center_a, double b, const Vector& center_b) {
    if (!(a > 0.0)) throw ParamError("sliding_prox: a must be > 0");
    if (b < 0.0) throw ParamError("sliding_prox: b must be >= 0");
    if (!chi.prox_friendly())
        throw UnsupportedProxError("sliding_prox: no closed form for this chi kind");
    require_same_dim(g, center_a, "sliding_prox");
    require_same_dim(g, center_b, "sliding_prox");

    const double denom = a + b + chi.strong_mu;
    if (!(denom > 0.0)) throw ParamError("sliding_prox: degenerate curvature");

    Vector u = (a * center_a + b * center_b - g) / denom;
    return set.project(u);
}

} // namespace sliding
