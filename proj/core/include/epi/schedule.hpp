#ifndef EPI_SCHEDULE_HPP
#define EPI_SCHEDULE_HPP

#include <vector>

namespace epi {

/// Piecewise-constant policy intervention u(t) on [0, horizon].
/// Segment i runs from breakpoints[i] to the next breakpoint (or the horizon)
/// at level levels[i].
struct InterventionSchedule {
    std::vector<int> breakpoints; // strictly increasing day indices, first is 0
    std::vector<double> levels;   // one level in [0,1] per segment
    int horizon = 0;              // final day covered

    static InterventionSchedule constant(double u, int horizon);

    /// Level of the segment containing time t. Requires a validated schedule;
    /// t past the last breakpoint returns the last level.
    double at(double t) const;

    void validate() const;
};

/// Transmission rate under intervention: (1 - u) * beta.
/// Throws ValidationError for u outside [0, 1].
double effective_beta(double beta, double u);

} // namespace epi

#endif
