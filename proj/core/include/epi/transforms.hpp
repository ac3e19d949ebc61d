#ifndef EPI_TRANSFORMS_HPP
#define EPI_TRANSFORMS_HPP

#include <array>
#include <cmath>

namespace epi {

/// log(p / (1-p)) for p in (0, 1).
inline double logit(double p) { return std::log(p) - std::log1p(-p); }

/// Inverse logit, numerically stable on both tails.
inline double expit(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// log(expit(z)) without forming expit(z).
inline double log_expit(double z) {
    return z >= 0.0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
}

/// Unconstrained fitting coordinates z = (ln r0, logit rho).
inline std::array<double, 2> theta_to_unconstrained(double r0, double rho) {
    return {std::log(r0), logit(rho)};
}

inline std::array<double, 2> unconstrained_to_theta(std::array<double, 2> z) {
    return {std::exp(z[0]), expit(z[1])};
}

/// log |d theta / d z| for the (exp, expit) map; needed when sampling a
/// density over theta through z.
inline double log_jacobian(std::array<double, 2> z) {
    return z[0] + log_expit(z[1]) + log_expit(-z[1]);
}

} // namespace epi

#endif
