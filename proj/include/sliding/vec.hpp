#pragma once

#include <Eigen/Dense>

#include "sliding/errors.hpp"

namespace sliding {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) throw ParamError(std::string(what) + ": non-finite entries");
}

inline void require_same_dim(const Vector& a, const Vector& b, const char* what) {
    if (a.size() != b.size())
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

} // namespace sliding
