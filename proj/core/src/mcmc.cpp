#include "epi/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "epi/errors.hpp"
#include "epi/rng.hpp"

namespace epi {

void McmcConfig::validate() const {
    if (chains < 1) throw ValidationError("mcmc chains must be >= 1");
    if (iterations < 1) throw ValidationError("mcmc iterations must be >= 1");
    if (burn_in < 0 || burn_in >= iterations) {
        throw ValidationError("mcmc burn_in must lie in [0, iterations)");
    }
    if (!(initial_scale > 0.0)) throw ValidationError("mcmc initial_scale must be > 0");
    if (!(target_acceptance > 0.0 && target_acceptance < 1.0)) {
        throw ValidationError("mcmc target_acceptance must lie in (0, 1)");
    }
}

namespace {

// Per-coordinate running moments for the adaptive proposal.
struct RunningVariance {
    std::vector<double> mean;
    std::vector<double> m2;
    long count = 0;

    explicit RunningVariance(std::size_t dim) : mean(dim, 0.0), m2(dim, 0.0) {}

    void reset() {
        std::fill(mean.begin(), mean.end(), 0.0);
        std::fill(m2.begin(), m2.end(), 0.0);
        count = 0;
    }

    void add(std::span<const double> x) {
        ++count;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double delta = x[i] - mean[i];
            mean[i] += delta / static_cast<double>(count);
            m2[i] += delta * (x[i] - mean[i]);
        }
    }

    double sd(std::size_t i) const {
        if (count < 2) return 1.0;
        const double var = m2[i] / static_cast<double>(count - 1);
        return var > 0.0 ? std::sqrt(var) : 1.0;
    }
};

} // namespace

McmcResult sample_adaptive_metropolis(const LogDensity& log_target,
                                      std::span<const double> init,
                                      const McmcConfig& config) {
    config.validate();
    const std::size_t dim = init.size();
    if (dim == 0) throw ValidationError("mcmc init point must be non-empty");

    McmcResult result;
    const int retained_per_chain = config.iterations - config.burn_in;
    result.draws.reserve(static_cast<std::size_t>(config.chains) *
                         static_cast<std::size_t>(retained_per_chain));
    result.acceptance_rate.reserve(config.chains);

    for (int chain = 0; chain < config.chains; ++chain) {
        std::mt19937_64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(chain)));
        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);

        std::vector<double> current(init.begin(), init.end());
        for (double& c : current) c += config.init_jitter * normal(rng);
        double current_lp = log_target(current);
        if (!std::isfinite(current_lp)) {
            // A jittered start may land out of support; fall back to the
            // unjittered point, which the caller is responsible for.
            current.assign(init.begin(), init.end());
            current_lp = log_target(current);
        }

        double log_scale = std::log(config.initial_scale);
        std::vector<double> coord_sd(dim, 1.0);
        RunningVariance variance(dim);

        std::vector<double> proposal(dim);
        long accepted_post = 0;

        for (int it = 0; it < config.iterations; ++it) {
            const double scale = std::exp(log_scale);
            for (std::size_t i = 0; i < dim; ++i) {
                proposal[i] = current[i] + scale * coord_sd[i] * normal(rng);
            }
            const double proposal_lp = log_target(proposal);
            double alpha;
            if (std::isnan(proposal_lp) ||
                proposal_lp == -std::numeric_limits<double>::infinity()) {
                alpha = 0.0;
            } else if (current_lp == -std::numeric_limits<double>::infinity()) {
                alpha = 1.0; // escape an out-of-support start
            } else {
                const double log_alpha = proposal_lp - current_lp;
                alpha = log_alpha >= 0.0 ? 1.0
                                         : std::exp(std::max(log_alpha, -745.0));
            }
            const bool accepted = uniform(rng) < alpha;
            if (accepted) {
                current = proposal;
                current_lp = proposal_lp;
            }

            if (it < config.burn_in) {
                // Robbins-Monro steering of the global factor toward the
                // target acceptance probability.
                const double step =
                    1.0 / std::pow(static_cast<double>(it + 1), 0.6);
                log_scale += step * (alpha - config.target_acceptance);

                // Restart the variance tracker halfway through burn-in so the
                // frozen coordinate scales are not dominated by the initial
                // transient.
                if (it == config.burn_in / 2) variance.reset();
                variance.add(current);
                if (variance.count >= 50) {
                    for (std::size_t i = 0; i < dim; ++i) {
                        coord_sd[i] = variance.sd(i);
                    }
                }
            } else {
                if (accepted) ++accepted_post;
                result.draws.emplace_back(current);
            }
        }

        result.acceptance_rate.push_back(
            retained_per_chain > 0
                ? static_cast<double>(accepted_post) / retained_per_chain
                : 0.0);
    }

    for (int chain = 0; chain < config.chains; ++chain) {
        if (result.acceptance_rate[chain] < 0.01) {
            std::ostringstream msg;
            msg << "chain " << chain << " acceptance rate "
                << result.acceptance_rate[chain]
                << " below 1% after adaptation; samples may be unreliable";
            result.warnings.push_back(msg.str());
        }
    }
    return result;
}

} // namespace epi
