#include "epi/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>

#include "epi/errors.hpp"
#include "epi/mcmc.hpp"
#include "epi/nelder_mead.hpp"
#include "epi/stats.hpp"
#include "epi/transforms.hpp"

namespace epi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimum draw count before summarize() will report quantiles.
constexpr std::size_t kMinDrawsForSummary = 100;

} // namespace

void FitConfig::validate() const {
    if (chains < 1) {
        throw ValidationError("fit: chains must be >= 1");
    }
    if (iterations < 1) {
        throw ValidationError("fit: iterations must be >= 1");
    }
    if (burn_in < 0 || burn_in >= iterations) {
        throw ValidationError("fit: burn_in must be in [0, iterations)");
    }
    if (!(proposal_scale > 0.0)) {
        throw ValidationError("fit: proposal_scale must be positive");
    }
    if (map_restarts < 1) {
        throw ValidationError("fit: map_restarts must be >= 1");
    }
}

void PosteriorSamples::validate() const {
    if (chains < 1) {
        throw ValidationError("posterior samples: chains must be >= 1");
    }
    if (acceptance_rate.size() != static_cast<std::size_t>(chains)) {
        throw ValidationError(
            "posterior samples: one acceptance rate per chain required");
    }
    for (const auto& draw : draws) {
        if (!(draw[0] > 0.0) || !std::isfinite(draw[0])) {
            throw ValidationError(
                "posterior samples: r0 draws must be positive and finite");
        }
        if (!(draw[1] > 0.0) || !(draw[1] < 1.0)) {
            throw ValidationError(
                "posterior samples: rho draws must lie in (0, 1)");
        }
    }
}

double log_posterior(double r0, double rho, const ModelSpec& spec,
                     const DiseaseParams& fixed, const ObservedSeries& data,
                     const PriorSpec& prior) {
    const double lp = log_prior(r0, rho, prior);
    if (lp == -kInf) {
        return -kInf;
    }
    try {
        return lp + log_likelihood(r0, rho, spec, fixed, data);
    } catch (const SimulationError&) {
        // Integration blew up (e.g. extreme r0 proposals); treat as zero
        // posterior mass rather than aborting the whole fit.
        return -kInf;
    }
}

MapEstimate fit_map_density(const ThetaLogDensity& log_density,
                            std::array<double, 2> start,
                            const FitConfig& config) {
    config.validate();

    // Objective over z = (ln r0, logit rho). No Jacobian term: the minimizer
    // of this function maps back to the mode in (r0, rho) space.
    const auto objective = [&](std::span<const double> z) {
        const auto theta = unconstrained_to_theta({z[0], z[1]});
        const double ld = log_density(theta[0], theta[1]);
        if (ld == -kInf || std::isnan(ld)) {
            return kInf;
        }
        return -ld;
    };

    const auto center = theta_to_unconstrained(start[0], start[1]);

    // First restart from the given center, the rest jittered around it so a
    // bad basin at the center cannot trap the whole search.
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> jitter(0.0, 0.5);

    bool have_best = false;
    std::array<double, 2> best_z = center;
    double best_f = kInf;

    for (int restart = 0; restart < config.map_restarts; ++restart) {
        std::array<double, 2> z0 = center;
        if (restart > 0) {
            z0[0] += jitter(rng);
            z0[1] += jitter(rng);
        }
        const auto result =
            nelder_mead_minimize(objective, {z0[0], z0[1]}, {0.5, 0.5});
        if (!std::isfinite(result.f)) {
            continue;
        }
        if (result.f < best_f) {
            best_f = result.f;
            best_z = std::array<double, 2>{result.x[0], result.x[1]};
            have_best = true;
        }
    }

    if (!have_best) {
        throw ConvergenceError(
            "map fit: no restart reached a finite density value",
            unconstrained_to_theta(best_z), -best_f);
    }

    const auto theta = unconstrained_to_theta(best_z);
    MapEstimate estimate;
    estimate.r0 = theta[0];
    estimate.rho = theta[1];
    estimate.log_posterior = -best_f;
    return estimate;
}

PosteriorSamples sample_theta_density(const ThetaLogDensity& log_density,
                                      std::array<double, 2> init,
                                      const FitConfig& config) {
    config.validate();

    // Sampling target includes the log Jacobian of the transform so draws in
    // z-space push forward to the intended density over (r0, rho).
    const LogDensity target = [&](std::span<const double> z) {
        const auto theta = unconstrained_to_theta({z[0], z[1]});
        const double ld = log_density(theta[0], theta[1]);
        if (ld == -kInf || std::isnan(ld)) {
            return -kInf;
        }
        return ld + log_jacobian({z[0], z[1]});
    };

    McmcConfig mcmc;
    mcmc.chains = config.chains;
    mcmc.iterations = config.iterations;
    mcmc.burn_in = config.burn_in;
    mcmc.initial_scale = config.proposal_scale;
    mcmc.init_jitter = 0.1 * config.proposal_scale;
    mcmc.seed = config.seed;

    const auto init_z = theta_to_unconstrained(init[0], init[1]);
    const McmcResult raw = sample_adaptive_metropolis(target, init_z, mcmc);

    PosteriorSamples samples;
    samples.chains = config.chains;
    samples.acceptance_rate = raw.acceptance_rate;
    samples.seed = config.seed;
    samples.warnings = raw.warnings;
    samples.draws.reserve(raw.draws.size());
    for (const auto& z : raw.draws) {
        samples.draws.push_back(unconstrained_to_theta({z[0], z[1]}));
    }
    samples.validate();
    return samples;
}

MapEstimate fit_map(const ModelSpec& spec, const DiseaseParams& fixed,
                    const ObservedSeries& data, const PriorSpec& prior,
                    const FitConfig& config) {
    spec.validate();
    fixed.validate(spec.family);
    data.validate();
    prior.validate();

    const ThetaLogDensity density = [&](double r0, double rho) {
        return log_posterior(r0, rho, spec, fixed, data, prior);
    };
    return fit_map_density(
        density, {std::exp(prior.r0_prior.location), 0.5}, config);
}

PosteriorSamples fit_mcmc(const ModelSpec& spec, const DiseaseParams& fixed,
                          const ObservedSeries& data, const PriorSpec& prior,
                          const FitConfig& config) {
    const MapEstimate map = fit_map(spec, fixed, data, prior, config);

    const ThetaLogDensity density = [&](double r0, double rho) {
        return log_posterior(r0, rho, spec, fixed, data, prior);
    };
    return sample_theta_density(density, {map.r0, map.rho}, config);
}

namespace {

ParamSummary summarize_column(const std::vector<std::array<double, 2>>& draws,
                              std::size_t column) {
    std::vector<double> values;
    values.reserve(draws.size());
    for (const auto& draw : draws) {
        values.push_back(draw[column]);
    }
    ParamSummary summary;
    summary.mean = mean(values);
    summary.sd = stddev_population(values);
    std::sort(values.begin(), values.end());
    summary.q05 = quantile_sorted(values, 0.05);
    summary.q50 = quantile_sorted(values, 0.50);
    summary.q95 = quantile_sorted(values, 0.95);
    return summary;
}

} // namespace

PosteriorSummary summarize(const PosteriorSamples& samples) {
    if (samples.draws.size() < kMinDrawsForSummary) {
        throw InsufficientSamplesError(
            "posterior summary requires at least 100 draws, got " +
            std::to_string(samples.draws.size()));
    }
    PosteriorSummary summary;
    summary.r0 = summarize_column(samples.draws, 0);
    summary.rho = summarize_column(samples.draws, 1);
    summary.n_draws = samples.draws.size();
    return summary;
}

} // namespace epi
