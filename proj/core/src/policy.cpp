#include "epi/policy.hpp"

#include <algorithm>
#include <cmath>

#include "epi/errors.hpp"

namespace epi {

std::vector<double> default_u_grid() {
    std::vector<double> grid;
    grid.reserve(21);
    // i/20.0 rather than i*0.05: each level is then the double nearest the
    // decimal value, so grids print as 0.35 and not 0.35000000000000003.
    for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
    return grid;
}

void PolicySearchConfig::validate() const {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw ValidationError("policy threshold must lie in (0, 1]");
    }
    if (u_grid.empty() || !std::is_sorted(u_grid.begin(), u_grid.end())) {
        throw ValidationError("policy u_grid must be sorted ascending");
    }
    for (double u : u_grid) {
        if (!(u >= 0.0 && u <= 1.0)) {
            throw ValidationError("policy u_grid levels must lie in [0, 1]");
        }
    }
    if (u_grid.front() != 0.0 || u_grid.back() != 1.0) {
        throw ValidationError("policy u_grid must contain 0 and 1");
    }
    if (decision_interval <= 0) {
        throw ValidationError("policy decision_interval must be a positive day count");
    }
    if (lookahead && *lookahead <= 0) {
        throw ValidationError("policy lookahead must be a positive day count");
    }
    if (horizon <= 0) {
        throw ValidationError("policy horizon must be a positive day count");
    }
}

std::vector<Trajectory> sweep(const ModelSpec& spec, const DiseaseParams& params,
                              const std::vector<double>& u_values, int horizon_days) {
    std::vector<Trajectory> result;
    result.reserve(u_values.size());
    for (double u : u_values) {
        result.push_back(
            simulate(spec, params, InterventionSchedule::constant(u, horizon_days),
                     horizon_days));
    }
    return result;
}

PolicySearchResult greedy_search(const ModelSpec& spec, const DiseaseParams& params,
                                 const PolicySearchConfig& config) {
    config.validate();

    PolicySearchResult result;
    result.schedule.horizon = config.horizon;

    CompartmentState state = init_state(spec, params);
    int day = 0;
    while (day < config.horizon) {
        const int segment_end = std::min(day + config.decision_interval, config.horizon);
        int lookahead_end =
            config.lookahead ? std::min(day + *config.lookahead, config.horizon)
                             : config.horizon;
        // The lookahead must at least cover the segment it commits to.
        lookahead_end = std::max(lookahead_end, segment_end);

        std::optional<double> chosen;
        Trajectory chosen_traj;
        for (double u : config.u_grid) {
            Trajectory traj = simulate_from(
                spec, params, state, day,
                InterventionSchedule::constant(u, lookahead_end), lookahead_end - day);
            if (traj.peak_infected() <= config.threshold) {
                chosen = u;
                chosen_traj = std::move(traj);
                break;
            }
            if (u == config.u_grid.back()) {
                // Keep the u = 1 trajectory so the advance below can reuse it.
                chosen_traj = std::move(traj);
            }
        }
        if (!chosen) {
            chosen = config.u_grid.back(); // grid always contains 1
            result.feasible = false;
        }

        result.schedule.breakpoints.push_back(day);
        result.schedule.levels.push_back(*chosen);

        // Advance to the next decision point. The committed stretch of the
        // candidate trajectory was produced by the same integrator from the
        // same state, so reusing it is bit-identical to re-simulating.
        state = chosen_traj.states[static_cast<std::size_t>(segment_end - day)];
        day = segment_end;
    }

    result.schedule.validate();
    return result;
}

} // namespace epi
