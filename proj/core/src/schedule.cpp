#include "epi/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "epi/errors.hpp"

namespace epi {

InterventionSchedule InterventionSchedule::constant(double u, int horizon) {
    InterventionSchedule s;
    s.breakpoints = {0};
    s.levels = {u};
    s.horizon = horizon;
    s.validate();
    return s;
}

double InterventionSchedule::at(double t) const {
    // Last breakpoint <= t; times before the first breakpoint use the first
    // segment.
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    if (it == breakpoints.begin()) return levels.front();
    return levels[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

void InterventionSchedule::validate() const {
    if (breakpoints.empty()) {
        throw ValidationError("schedule must have at least one segment");
    }
    if (breakpoints.size() != levels.size()) {
        throw ValidationError("schedule breakpoints and levels must match in length");
    }
    if (breakpoints.front() != 0) {
        throw ValidationError("schedule must start at day 0");
    }
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (breakpoints[i] <= breakpoints[i - 1]) {
            throw ValidationError("schedule breakpoints must be strictly increasing");
        }
    }
    for (double u : levels) {
        if (!(u >= 0.0 && u <= 1.0)) {
            throw ValidationError("schedule levels must lie in [0, 1]");
        }
    }
    if (horizon < 0) {
        throw ValidationError("schedule horizon must be non-negative");
    }
}

double effective_beta(double beta, double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw ValidationError("intervention level u must lie in [0, 1]");
    }
    if (!(std::isfinite(beta) && beta >= 0.0)) {
        throw ValidationError("beta must be finite and non-negative");
    }
    return (1.0 - u) * beta;
}

} // namespace epi
