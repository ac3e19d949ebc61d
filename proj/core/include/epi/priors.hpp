#ifndef EPI_PRIORS_HPP
#define EPI_PRIORS_HPP

#include <cmath>

namespace epi {

/// Log-normal prior on R0.
struct LogNormalPrior {
    double location = std::log(2.0);
    double scale = 0.5;
};

/// Beta prior on the response rate rho.
struct BetaPrior {
    double alpha = 2.0;
    double beta = 2.0;
};

struct PriorSpec {
    LogNormalPrior r0_prior;
    BetaPrior rho_prior;

    void validate() const;
};

/// Log density of LogNormal(location, scale) at x; -inf for x <= 0.
double lognormal_logpdf(double x, double location, double scale);

/// Log density of Beta(alpha, beta) at x; -inf for x outside the open
/// interval (0, 1).
double beta_logpdf(double x, double alpha, double beta);

/// Joint log prior density at (r0, rho); -inf out of support rather than an
/// exception.
double log_prior(double r0, double rho, const PriorSpec& prior);

} // namespace epi

#endif
