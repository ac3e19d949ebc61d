#include "epi/priors.hpp"

#include <limits>
#include <numbers>

#include "epi/errors.hpp"

namespace epi {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

void PriorSpec::validate() const {
    if (!(r0_prior.scale > 0.0)) {
        throw ValidationError("r0 prior scale must be > 0");
    }
    if (!(rho_prior.alpha > 0.0 && rho_prior.beta > 0.0)) {
        throw ValidationError("rho prior Beta shapes must be > 0");
    }
}

double lognormal_logpdf(double x, double location, double scale) {
    if (!(x > 0.0)) return kNegInf;
    const double z = (std::log(x) - location) / scale;
    return -std::log(x) - std::log(scale * std::sqrt(2.0 * std::numbers::pi)) -
           0.5 * z * z;
}

double beta_logpdf(double x, double alpha, double beta) {
    if (!(x > 0.0 && x < 1.0)) return kNegInf;
    const double log_norm =
        std::lgamma(alpha + beta) - std::lgamma(alpha) - std::lgamma(beta);
    return log_norm + (alpha - 1.0) * std::log(x) + (beta - 1.0) * std::log1p(-x);
}

double log_prior(double r0, double rho, const PriorSpec& prior) {
    return lognormal_logpdf(r0, prior.r0_prior.location, prior.r0_prior.scale) +
           beta_logpdf(rho, prior.rho_prior.alpha, prior.rho_prior.beta);
}

} // namespace epi
