#ifndef EPI_POLICY_HPP
#define EPI_POLICY_HPP

#include <optional>
#include <vector>

#include "epi/simulate.hpp"

namespace epi {

/// Default candidate grid 0, 0.05, ..., 1.0.
std::vector<double> default_u_grid();

struct PolicySearchConfig {
    double threshold = 0.10;           // max tolerated currently-infected fraction
    std::vector<double> u_grid = default_u_grid(); // ascending, must contain 0 and 1
    int decision_interval = 7;         // days between policy decisions
    std::optional<int> lookahead;      // nullopt = remaining horizon
    int horizon = 365;

    void validate() const;
};

struct PolicySearchResult {
    InterventionSchedule schedule;
    /// True iff every decision point found a grid level whose lookahead
    /// stayed within the threshold.
    bool feasible = true;
};

/// One constant-u trajectory per entry of u_values, in input order.
std::vector<Trajectory> sweep(const ModelSpec& spec, const DiseaseParams& params,
                              const std::vector<double>& u_values, int horizon_days);

/// Greedy adaptive intervention search. Walks time in steps of
/// decision_interval; at each decision tries grid levels in ascending order
/// and keeps the first whose lookahead trajectory (u held constant) never
/// exceeds the threshold. When no level satisfies the bound, u = 1 is used
/// for that segment and the result is flagged infeasible.
PolicySearchResult greedy_search(const ModelSpec& spec, const DiseaseParams& params,
                                 const PolicySearchConfig& config);

} // namespace epi

#endif
