#include "epi/likelihood.hpp"

#include <cmath>

#include "epi/errors.hpp"
#include "epi/simulate.hpp"

namespace epi {

DiseaseParams with_theta(DiseaseParams fixed, double r0, double rho) {
    fixed.r0 = r0;
    fixed.rho = rho;
    return fixed;
}

std::vector<double> expected_counts(const ModelSpec& spec,
                                    const DiseaseParams& params,
                                    double population, std::size_t days) {
    const Trajectory traj =
        simulate(spec, params, InterventionSchedule::constant(0.0, static_cast<int>(days)),
                 static_cast<int>(days));
    std::vector<double> expected(days);
    for (std::size_t t = 0; t < days; ++t) {
        expected[t] = params.rho * traj.incidence[t] * population;
    }
    return expected;
}

double log_likelihood(double r0, double rho, const ModelSpec& spec,
                      const DiseaseParams& fixed, const ObservedSeries& data) {
    data.validate();
    const DiseaseParams params = with_theta(fixed, r0, rho);
    const std::vector<double> expected =
        expected_counts(spec, params, data.population, data.counts.size());

    double ll = 0.0;
    for (std::size_t t = 0; t < data.counts.size(); ++t) {
        const double lambda = expected[t] + kRateFloor;
        const double count = static_cast<double>(data.counts[t]);
        ll += count * std::log(lambda) - lambda - std::lgamma(count + 1.0);
    }
    return ll;
}

} // namespace epi
