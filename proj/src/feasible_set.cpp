#include "sliding/feasible_set.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sliding {

Vector simplex_project(const Vector& v) {
    const Eigen::Index n = v.size();
    if (n < 1) throw DimensionError("simplex_project: empty vector");
    require_finite(v, "simplex_project");

    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());

    // Largest j with u_j - (cumsum_j - 1)/j > 0 gives the threshold.
    double cumsum = 0.0;
    double theta = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        cumsum += u[static_cast<std::size_t>(j)];
        const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
        if (u[static_cast<std::size_t>(j)] - t > 0.0)
            theta = t;
        else
            break;
    }

    Vector w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = std::max(v[i] - theta, 0.0);
    return w;
}

Vector box_clip(const Vector& v, double lo, double hi) {
    if (lo > hi) throw ParamError("box_clip: lo > hi");
    return v.cwiseMax(lo).cwiseMin(hi);
}

FeasibleSet FeasibleSet::whole_space(Eigen::Index dim) {
    if (dim < 1) throw DimensionError("whole_space: dim must be >= 1");
    return FeasibleSet(Kind::WholeSpace, dim, 0.0, 0.0);
}

FeasibleSet FeasibleSet::simplex(Eigen::Index dim) {
    if (dim < 1) throw DimensionError("simplex: dim must be >= 1");
    return FeasibleSet(Kind::Simplex, dim, 0.0, 1.0);
}

FeasibleSet FeasibleSet::box(double lo, double hi, Eigen::Index dim) {
    if (dim < 1) throw DimensionError("box: dim must be >= 1");
    if (lo > hi) throw ParamError("box: lo > hi");
    return FeasibleSet(Kind::Box, dim, lo, hi);
}

Vector FeasibleSet::project(const Vector& v) const {
    if (v.size() != dim_) throw DimensionError("FeasibleSet::project: wrong dimension");
    switch (kind_) {
        case Kind::WholeSpace: return v;
        case Kind::Simplex: return simplex_project(v);
        case Kind::Box: return box_clip(v, lo_, hi_);
    }
    throw ParamError("FeasibleSet::project: unknown kind");
}

double FeasibleSet::violation(const Vector& v) const {
    if (v.size() != dim_) throw DimensionError("FeasibleSet::violation: wrong dimension");
    switch (kind_) {
        case Kind::WholeSpace:
            return v.allFinite() ? 0.0 : std::numeric_limits<double>::infinity();
        case Kind::Simplex: {
            double worst = std::abs(v.sum() - 1.0);
            worst = std::max(worst, -std::min(0.0, v.minCoeff()));
            return worst;
        }
        case Kind::Box: {
            double worst = 0.0;
            for (Eigen::Index i = 0; i < dim_; ++i) {
                worst = std::max(worst, lo_ - v[i]);
                worst = std::max(worst, v[i] - hi_);
            }
            return std::max(worst, 0.0);
        }
    }
    return std::numeric_limits<double>::infinity();
}

bool FeasibleSet::contains(const Vector& v, double tol) const {
    return violation(v) <= tol;
}

bool FeasibleSet::nonnegative() const {
    switch (kind_) {
        case Kind::Simplex: return true;
        case Kind::Box: return lo_ >= 0.0;
        case Kind::WholeSpace: return false;
    }
    return false;
}

} // namespace sliding
