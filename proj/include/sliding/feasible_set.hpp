#pragma once

#include "sliding/vec.hpp"

namespace sliding {

// Euclidean projection onto the probability simplex (sort-and-threshold,
// O(n log n), exact up to rounding).
Vector simplex_project(const Vector& v);

// Componentwise clamp to [lo, hi].
Vector box_clip(const Vector& v, double lo, double hi);

class FeasibleSet {
public:
    enum class Kind { WholeSpace, Simplex, Box };

    static FeasibleSet whole_space(Eigen::Index dim);
    static FeasibleSet simplex(Eigen::Index dim);
    static FeasibleSet box(double lo, double hi, Eigen::Index dim);

    Vector project(const Vector& v) const;
    bool contains(const Vector& v, double tol = 1e-12) const;
    // Max-norm distance to the set constraints; 0 on members.
    double violation(const Vector& v) const;

    Kind kind() const { return kind_; }
    Eigen::Index dim() const { return dim_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    // True when the set lies in the nonnegative orthant (tightens the
    // l1 subgradient constant M).
    bool nonnegative() const;

private:
    FeasibleSet(Kind k, Eigen::Index dim, double lo, double hi)
        : kind_(k), dim_(dim), lo_(lo), hi_(hi) {}

    Kind kind_;
    Eigen::Index dim_;
    double lo_ = 0.0, hi_ = 0.0;
};

} // namespace sliding
