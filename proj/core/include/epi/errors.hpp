#ifndef EPI_ERRORS_HPP
#define EPI_ERRORS_HPP

#include <array>
#include <stdexcept>
#include <string>

namespace epi {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed input files, or broken type invariants.
/// Maps to CLI exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerical integration produced a state the clamping rule cannot repair.
class SimulationError : public Error {
public:
    using Error::Error;
};

/// Optimizer failed to improve on any restart. Carries the best point found
/// so callers can still inspect it.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, std::array<double, 2> best_theta,
                     double best_value)
        : Error(msg), best_theta_(best_theta), best_value_(best_value) {}

    std::array<double, 2> best_theta() const { return best_theta_; }
    double best_value() const { return best_value_; }

private:
    std::array<double, 2> best_theta_;
    double best_value_;
};

/// Too few posterior draws for the requested operation.
class InsufficientSamplesError : public Error {
public:
    using Error::Error;
};

} // namespace epi

#endif
