#ifndef EPI_LIKELIHOOD_HPP
#define EPI_LIKELIHOOD_HPP

#include <vector>

#include "epi/model.hpp"
#include "epi/series.hpp"

namespace epi {

/// Additive floor on the Poisson rate; keeps the likelihood finite on days
/// where simulated incidence underflows to zero but a positive count exists.
inline constexpr double kRateFloor = 1e-8;

/// Replaces the inferred coordinates of a fixed parameter set.
DiseaseParams with_theta(DiseaseParams fixed, double r0, double rho);

/// Expected observed daily counts rho * incidence_t * population for the
/// first `days` days of the deterministic no-intervention trajectory.
/// The likelihood floor is not applied here.
std::vector<double> expected_counts(const ModelSpec& spec,
                                    const DiseaseParams& params,
                                    double population, std::size_t days);

/// Poisson log likelihood of the observed counts under rates
/// lambda_t = rho * incidence_t * population + 1e-8.
double log_likelihood(double r0, double rho, const ModelSpec& spec,
                      const DiseaseParams& fixed, const ObservedSeries& data);

} // namespace epi

#endif
