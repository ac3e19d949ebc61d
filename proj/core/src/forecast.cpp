#include "epi/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "epi/errors.hpp"
#include "epi/likelihood.hpp"
#include "epi/rng.hpp"
#include "epi/stats.hpp"

namespace epi {

void ForecastOptions::validate() const {
    if (n_draws < 1) {
        throw ValidationError("forecast: n_draws must be >= 1");
    }
}

void ForecastBands::validate() const {
    const std::size_t n = days.size();
    if (lower.size() != n || median.size() != n || upper.size() != n) {
        throw ValidationError("forecast bands: column lengths differ");
    }
    if (history_days < 0 || static_cast<std::size_t>(history_days) > n) {
        throw ValidationError("forecast bands: history_days out of range");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (lower[i] < 0.0 || lower[i] > median[i] || median[i] > upper[i]) {
            throw ValidationError(
                "forecast bands: expected 0 <= lower <= median <= upper");
        }
    }
}

ForecastBands posterior_predictive(const ModelSpec& spec,
                                   const DiseaseParams& fixed,
                                   const PosteriorSamples& samples,
                                   const ObservedSeries& data,
                                   int horizon_days,
                                   const ForecastOptions& options) {
    spec.validate();
    fixed.validate(spec.family);
    data.validate();
    options.validate();
    if (horizon_days < 0) {
        throw ValidationError("forecast: horizon_days must be >= 0");
    }
    if (samples.draws.empty()) {
        throw InsufficientSamplesError("forecast: no posterior draws available");
    }

    const int history = static_cast<int>(data.counts.size());
    const int total_days = history + horizon_days;

    // Evenly thin when fewer draws are requested than retained, so results
    // stay deterministic and every chain segment contributes.
    const std::size_t available = samples.draws.size();
    const std::size_t used = std::min<std::size_t>(
        static_cast<std::size_t>(options.n_draws), available);
    std::vector<std::size_t> pick(used);
    for (std::size_t i = 0; i < used; ++i) {
        pick[i] = i * available / used;
    }

    // counts_by_day[t] holds one simulated count per selected draw.
    std::vector<std::vector<double>> counts_by_day(
        static_cast<std::size_t>(total_days));
    for (auto& column : counts_by_day) {
        column.reserve(used);
    }

    for (std::size_t i = 0; i < used; ++i) {
        const auto& draw = samples.draws[pick[i]];
        const DiseaseParams params = with_theta(fixed, draw[0], draw[1]);
        const std::vector<double> expected =
            expected_counts(spec, params, data.population, total_days);

        std::mt19937_64 rng(mix_seed(options.seed, i));
        for (int t = 0; t < total_days; ++t) {
            const double lambda = std::max(0.0, expected[static_cast<std::size_t>(t)]);
            double value = lambda;
            if (t >= history && options.observation_noise && lambda > 0.0) {
                std::poisson_distribution<long long> noise(lambda);
                value = static_cast<double>(noise(rng));
            }
            counts_by_day[static_cast<std::size_t>(t)].push_back(value);
        }
    }

    ForecastBands bands;
    bands.history_days = history;
    bands.draws_used = static_cast<int>(used);
    bands.days.resize(static_cast<std::size_t>(total_days));
    bands.lower.resize(static_cast<std::size_t>(total_days));
    bands.median.resize(static_cast<std::size_t>(total_days));
    bands.upper.resize(static_cast<std::size_t>(total_days));
    for (int t = 0; t < total_days; ++t) {
        auto& column = counts_by_day[static_cast<std::size_t>(t)];
        std::sort(column.begin(), column.end());
        bands.days[static_cast<std::size_t>(t)] = t;
        bands.lower[static_cast<std::size_t>(t)] = quantile_sorted(column, 0.05);
        bands.median[static_cast<std::size_t>(t)] = quantile_sorted(column, 0.50);
        bands.upper[static_cast<std::size_t>(t)] = quantile_sorted(column, 0.95);
    }
    bands.validate();
    return bands;
}

ReplayFit replay_fit(const ModelSpec& spec, const DiseaseParams& fixed,
                     double r0, double rho, const ObservedSeries& data) {
    data.validate();
    const DiseaseParams params = with_theta(fixed, r0, rho);
    params.validate(spec.family);

    ReplayFit replay;
    replay.expected = expected_counts(spec, params, data.population,
                                      static_cast<int>(data.counts.size()));
    replay.residuals.reserve(data.counts.size());
    for (std::size_t i = 0; i < data.counts.size(); ++i) {
        replay.residuals.push_back(
            static_cast<double>(data.counts[i]) - replay.expected[i]);
    }
    return replay;
}

} // namespace epi
