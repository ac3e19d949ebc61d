#ifndef EPI_FORECAST_HPP
#define EPI_FORECAST_HPP

#include <cstdint>
#include <vector>

#include "epi/fit.hpp"
#include "epi/model.hpp"
#include "epi/series.hpp"

namespace epi {

struct ForecastOptions {
    int n_draws = 500; // clamped to the number of retained posterior draws
    std::uint64_t seed = 1;
    // Disable to get pure parameter-uncertainty bands on future days too;
    // mainly useful for testing the band machinery in isolation.
    bool observation_noise = true;

    void validate() const;
};

/// Pointwise 5/50/95% case-count bands over history + forecast days.
/// Days [0, history) replay each draw's fitted expectation; days
/// [history, history + horizon) add Poisson observation noise per draw.
struct ForecastBands {
    std::vector<int> days;
    std::vector<double> lower;
    std::vector<double> median;
    std::vector<double> upper;
    int history_days = 0;
    int draws_used = 0;

    void validate() const;
};

ForecastBands posterior_predictive(const ModelSpec& spec,
                                   const DiseaseParams& fixed,
                                   const PosteriorSamples& samples,
                                   const ObservedSeries& data,
                                   int horizon_days,
                                   const ForecastOptions& options);

/// Fitted expectation at a single parameter point over the observed window,
/// with raw residuals for diagnostics.
struct ReplayFit {
    std::vector<double> expected;
    std::vector<double> residuals; // observed - expected
};

ReplayFit replay_fit(const ModelSpec& spec, const DiseaseParams& fixed,
                     double r0, double rho, const ObservedSeries& data);

} // namespace epi

#endif
