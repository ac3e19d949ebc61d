#ifndef EPI_FIT_HPP
#define EPI_FIT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "epi/likelihood.hpp"
#include "epi/model.hpp"
#include "epi/priors.hpp"
#include "epi/series.hpp"

namespace epi {

struct FitConfig {
    int chains = 4;
    int iterations = 5000; // per chain, including burn-in
    int burn_in = 2000;
    double proposal_scale = 0.1; // initial, in unconstrained space
    std::uint64_t seed = 1;
    int map_restarts = 5;

    void validate() const;
};

struct MapEstimate {
    double r0 = 0.0;
    double rho = 0.0;
    double log_posterior = 0.0;
};

/// Retained posterior draws over (r0, rho) with chain diagnostics.
struct PosteriorSamples {
    std::vector<std::array<double, 2>> draws; // columns (r0, rho)
    int chains = 0;
    std::vector<double> acceptance_rate; // per chain
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;

    void validate() const;
};

struct ParamSummary {
    double mean = 0.0;
    double sd = 0.0; // population standard deviation
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
};

struct PosteriorSummary {
    ParamSummary r0;
    ParamSummary rho;
    std::size_t n_draws = 0;
};

/// Unnormalized log posterior at (r0, rho); -inf out of support, -inf also
/// when the simulator cannot integrate the proposed parameters.
double log_posterior(double r0, double rho, const ModelSpec& spec,
                     const DiseaseParams& fixed, const ObservedSeries& data,
                     const PriorSpec& prior);

/// Any unnormalized log density over (r0, rho); -inf marks out-of-support.
/// fit_map/fit_mcmc pass the posterior; tests can pass e.g. the bare prior.
using ThetaLogDensity = std::function<double(double r0, double rho)>;

/// Maximize a log density over the unconstrained coordinates
/// (ln r0, logit rho) by Nelder-Mead with seeded restarts around `start`.
/// No Jacobian correction is applied, so the result is the mode of the
/// density in (r0, rho) space. Throws ConvergenceError (carrying the best
/// point) when no restart reaches a finite value.
MapEstimate fit_map_density(const ThetaLogDensity& log_density,
                            std::array<double, 2> start,
                            const FitConfig& config);

/// Adaptive random-walk Metropolis over the unconstrained coordinates with
/// the transform Jacobian included, so draws follow the given density over
/// (r0, rho). Chains start from jittered copies of `init`.
PosteriorSamples sample_theta_density(const ThetaLogDensity& log_density,
                                      std::array<double, 2> init,
                                      const FitConfig& config);

/// MAP estimate of the posterior over (r0, rho).
MapEstimate fit_map(const ModelSpec& spec, const DiseaseParams& fixed,
                    const ObservedSeries& data, const PriorSpec& prior,
                    const FitConfig& config);

/// Posterior samples via sample_theta_density, chains initialized at the
/// MAP point. Deterministic given the seed.
PosteriorSamples fit_mcmc(const ModelSpec& spec, const DiseaseParams& fixed,
                          const ObservedSeries& data, const PriorSpec& prior,
                          const FitConfig& config);

/// Per-parameter moments and 5/50/95% quantiles. Requires >= 100 draws.
PosteriorSummary summarize(const PosteriorSamples& samples);

} // namespace epi

#endif
