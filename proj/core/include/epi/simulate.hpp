#ifndef EPI_SIMULATE_HPP
#define EPI_SIMULATE_HPP

#include <vector>

#include "epi/model.hpp"
#include "epi/schedule.hpp"

namespace epi {

/// Fixed RK4 substep used by simulate(): 4 substeps per day.
inline constexpr double kSubstepDays = 0.25;

/// Daily-sampled deterministic trajectory.
struct Trajectory {
    ModelFamily family = ModelFamily::SIR;
    std::vector<int> times;                 // day indices, first..first+T
    std::vector<CompartmentState> states;   // one per day
    std::vector<double> incidence;          // S[t] - S[t+1], length T

    /// Currently-infected fraction on day index i (position, not day label).
    double infected_at(std::size_t i) const;
    /// Largest currently-infected fraction over the trajectory.
    double peak_infected() const;
    /// Day label at which peak_infected() is attained (first occurrence).
    int peak_day() const;

    void validate() const;
};

/// One classical 4th-order Runge-Kutta step of the model dynamics with u held
/// constant. Tiny negatives (>= -1e-12) are clamped to zero and the state
/// renormalized; anything below -1e-12 raises SimulationError.
CompartmentState step(const ModelSpec& spec, const DiseaseParams& params,
                      const CompartmentState& state, double u, double dt);

/// Daily trajectory from init_state over [0, horizon_days] under the given
/// schedule. Deterministic: identical inputs give bit-identical outputs.
Trajectory simulate(const ModelSpec& spec, const DiseaseParams& params,
                    const InterventionSchedule& schedule, int horizon_days);

/// As simulate(), but starting from an explicit state at day start_day.
/// Schedule lookups use absolute day labels.
Trajectory simulate_from(const ModelSpec& spec, const DiseaseParams& params,
                         const CompartmentState& start, int start_day,
                         const InterventionSchedule& schedule, int horizon_days);

} // namespace epi

#endif
