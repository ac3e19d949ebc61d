#include "epi/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epi/errors.hpp"

namespace epi {

namespace {

constexpr double kNegativeTolerance = 1e-12;

// Clamp tiny negatives to zero; renormalize only when a clamp actually fired
// or the sum drifted, so that exactly-conserved states pass through untouched.
void clamp_and_renormalize(std::vector<double>& values, int day) {
    bool clamped = false;
    for (double& v : values) {
        if (v < 0.0) {
            if (v < -kNegativeTolerance) {
                std::ostringstream msg;
                msg << "integrator failure near day " << day
                    << ": compartment fraction " << v << " below -1e-12";
                throw SimulationError(msg.str());
            }
            v = 0.0;
            clamped = true;
        }
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    if (clamped || std::abs(sum - 1.0) > 1e-10) {
        for (double& v : values) v /= sum;
    }
}

// RK4 with u held constant over the substep. Piecewise-constant schedules
// break only on integer days, which always align with substep boundaries.
void rk4_substep(const ModelSpec& spec, const DiseaseParams& params,
                 std::vector<double>& y, double u, double dt,
                 std::vector<double>& k1, std::vector<double>& k2,
                 std::vector<double>& k3, std::vector<double>& k4,
                 std::vector<double>& tmp) {
    const std::size_t n = y.size();
    derivatives_into(spec, params, y, u, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    derivatives_into(spec, params, tmp, u, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    derivatives_into(spec, params, tmp, u, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    derivatives_into(spec, params, tmp, u, k4);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

} // namespace

double Trajectory::infected_at(std::size_t i) const {
    return infected_fraction(family, states[i].values);
}

double Trajectory::peak_infected() const {
    double peak = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        peak = std::max(peak, infected_at(i));
    }
    return peak;
}

int Trajectory::peak_day() const {
    double peak = -1.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double inf = infected_at(i);
        if (inf > peak) {
            peak = inf;
            at = i;
        }
    }
    return times[at];
}

void Trajectory::validate() const {
    if (times.size() != states.size() || states.size() != incidence.size() + 1) {
        throw ValidationError(
            "trajectory lengths inconsistent: need |states| = |times| = |incidence|+1");
    }
    for (const CompartmentState& s : states) s.validate();
    for (double inc : incidence) {
        if (!(inc >= 0.0)) {
            throw ValidationError("trajectory incidence must be non-negative");
        }
    }
}

CompartmentState step(const ModelSpec& spec, const DiseaseParams& params,
                      const CompartmentState& state, double u, double dt) {
    if (!(dt > 0.0)) throw ValidationError("step dt must be > 0");
    if (u < 0.0 || u > 1.0) {
        throw ValidationError("intervention level u must lie in [0, 1]");
    }
    CompartmentState next = state;
    const std::size_t n = next.values.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    rk4_substep(spec, params, next.values, u, dt, k1, k2, k3, k4, tmp);
    clamp_and_renormalize(next.values, 0);
    return next;
}

Trajectory simulate(const ModelSpec& spec, const DiseaseParams& params,
                    const InterventionSchedule& schedule, int horizon_days) {
    return simulate_from(spec, params, init_state(spec, params), 0, schedule,
                         horizon_days);
}

Trajectory simulate_from(const ModelSpec& spec, const DiseaseParams& params,
                         const CompartmentState& start, int start_day,
                         const InterventionSchedule& schedule, int horizon_days) {
    if (horizon_days < 0) throw ValidationError("horizon_days must be >= 0");
    schedule.validate();

    Trajectory traj;
    traj.family = spec.family;
    traj.times.reserve(horizon_days + 1);
    traj.states.reserve(horizon_days + 1);
    traj.incidence.reserve(horizon_days);

    std::vector<double> y = start.values;
    const std::size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

    traj.times.push_back(start_day);
    traj.states.push_back(start);

    for (int day = 0; day < horizon_days; ++day) {
        const double u = schedule.at(static_cast<double>(start_day + day));
        const double s_before = y[0];
        for (int sub = 0; sub < 4; ++sub) {
            rk4_substep(spec, params, y, u, kSubstepDays, k1, k2, k3, k4, tmp);
            clamp_and_renormalize(y, start_day + day);
        }
        // No model here has inflow into S; negative differences can only be
        // renormalization noise.
        traj.incidence.push_back(std::max(0.0, s_before - y[0]));
        traj.times.push_back(start_day + day + 1);
        traj.states.push_back(CompartmentState{y});
    }
    return traj;
}

} // namespace epi
