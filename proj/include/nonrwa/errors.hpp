#pragma once

#include <stdexcept>
#include <string>

namespace nonrwa {

// Truncated series whose terms started growing instead of decaying.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Division by a vanishing physical denominator (zero anharmonicity,
// vanishing drive frequency denominator, ...).
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed-point or optimizer loop exhausted its iteration budget.
struct IterationError : std::runtime_error {
    IterationError(const std::string& msg, double last_residual)
        : std::runtime_error(msg), residual(last_residual) {}
    double residual;
};

// Protocol-level failure (no contour crossing found, fit failure, ...).
struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nonrwa
