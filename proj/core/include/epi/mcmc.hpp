#ifndef EPI_MCMC_HPP
#define EPI_MCMC_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace epi {

using LogDensity = std::function<double(std::span<const double>)>;

struct McmcConfig {
    int chains = 4;
    int iterations = 5000; // per chain, including burn-in
    int burn_in = 2000;    // discarded; proposal adaptation happens here
    double initial_scale = 0.1;
    double target_acceptance = 0.3; // middle of the 20-40% band
    double init_jitter = 0.01;      // sd of the Gaussian jitter around the start point
    std::uint64_t seed = 1;

    void validate() const;
};

struct McmcResult {
    /// Retained draws pooled in chain order, one row per draw.
    std::vector<std::vector<double>> draws;
    /// Post-burn-in acceptance rate per chain.
    std::vector<double> acceptance_rate;
    /// Diagnostics attached instead of raised; empty when healthy.
    std::vector<std::string> warnings;
};

/// Adaptive random-walk Metropolis. During burn-in the proposal is a
/// Gaussian with per-coordinate scales tracking the chain's running
/// variances and a global factor steered toward target_acceptance; both are
/// frozen afterwards. Deterministic given (config.seed, init).
McmcResult sample_adaptive_metropolis(const LogDensity& log_target,
                                      std::span<const double> init,
                                      const McmcConfig& config);

} // namespace epi

#endif
