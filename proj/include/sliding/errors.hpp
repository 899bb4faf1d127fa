#pragma once

#include <stdexcept>
#include <string>

namespace sliding {

// Error hierarchy used across the library. Configuration and input mistakes
// are ParamError/DimensionError; the remaining types mark conditions a
// caller may want to branch on.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct ParamError : Error {
    using Error::Error;
};

struct UnsupportedProxError : Error {
    using Error::Error;
};

struct UnsupportedSmoothingError : Error {
    using Error::Error;
};

struct StrongConvexityRequiredError : Error {
    using Error::Error;
};

struct BudgetExceededError : Error {
    using Error::Error;
};

struct AssumptionViolation : Error {
    using Error::Error;
};

struct NoConvergenceError : Error {
    using Error::Error;
};

struct SizeError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace sliding
