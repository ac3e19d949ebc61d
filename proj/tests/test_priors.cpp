#include <cmath>
#include <limits>

#include "doctest.h"
#include "epi/errors.hpp"
#include "epi/priors.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Trapezoid integral of exp(logpdf) over [lo, hi].
template <typename F>
double integrate(F&& logpdf, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + i * h;
        const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
        const double lp = logpdf(x);
        if (std::isfinite(lp)) {
            sum += weight * std::exp(lp);
        }
    }
    return sum * h;
}

} // namespace

TEST_SUITE("priors") {

TEST_CASE("symmetric beta density at its centre") {
    // Beta(2,2) at 1/2: pdf = 6 * 0.5 * 0.5 = 1.5, log = ln 1.5.
    CHECK(epi::beta_logpdf(0.5, 2.0, 2.0) ==
          doctest::Approx(std::log(1.5)).epsilon(1e-12));
}

TEST_CASE("beta density vanishes outside the open interval") {
    CHECK(epi::beta_logpdf(0.0, 2.0, 2.0) == -kInf);
    CHECK(epi::beta_logpdf(1.0, 2.0, 2.0) == -kInf);
    CHECK(epi::beta_logpdf(-0.2, 2.0, 2.0) == -kInf);
    CHECK(epi::beta_logpdf(1.7, 2.0, 2.0) == -kInf);
}

TEST_CASE("beta density integrates to one") {
    const double total = integrate(
        [](double x) { return epi::beta_logpdf(x, 2.0, 2.0); }, 0.0, 1.0,
        20000);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));

    const double skewed = integrate(
        [](double x) { return epi::beta_logpdf(x, 3.0, 1.5); }, 0.0, 1.0,
        200000);
    CHECK(skewed == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("log-normal density at the median has a closed form") {
    const double location = std::log(2.0);
    const double scale = 0.5;
    // At x = exp(location) the squared term vanishes:
    // logpdf = -location - log(scale * sqrt(2*pi)).
    const double expected =
        -location - std::log(scale * std::sqrt(2.0 * M_PI));
    CHECK(epi::lognormal_logpdf(2.0, location, scale) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log-normal density vanishes for non-positive arguments") {
    CHECK(epi::lognormal_logpdf(0.0, 0.0, 1.0) == -kInf);
    CHECK(epi::lognormal_logpdf(-3.0, 0.0, 1.0) == -kInf);
}

TEST_CASE("log-normal density integrates to one") {
    const double location = std::log(2.0);
    const double scale = 0.5;
    // Integrate in log space: pdf(e^t) * e^t is the normal density in t.
    const double total = integrate(
        [&](double t) {
            return epi::lognormal_logpdf(std::exp(t), location, scale) + t;
        },
        location - 10.0 * scale, location + 10.0 * scale, 20000);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("joint prior sums the marginal log densities") {
    epi::PriorSpec prior;
    const double joint = epi::log_prior(2.0, 0.5, prior);
    const double expected =
        epi::lognormal_logpdf(2.0, prior.r0_prior.location,
                              prior.r0_prior.scale) +
        epi::beta_logpdf(0.5, prior.rho_prior.alpha, prior.rho_prior.beta);
    CHECK(joint == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("out-of-support points yield minus infinity, not exceptions") {
    epi::PriorSpec prior;
    CHECK(epi::log_prior(-1.0, 0.5, prior) == -kInf);
    CHECK(epi::log_prior(2.0, 0.0, prior) == -kInf);
    CHECK(epi::log_prior(2.0, 1.0, prior) == -kInf);
    CHECK(epi::log_prior(0.0, 1.5, prior) == -kInf);
}

TEST_CASE("prior hyper-parameters are validated") {
    epi::PriorSpec prior;
    CHECK_NOTHROW(prior.validate());
    prior.r0_prior.scale = 0.0;
    CHECK_THROWS_AS(prior.validate(), epi::ValidationError);
    prior = epi::PriorSpec{};
    prior.rho_prior.alpha = -2.0;
    CHECK_THROWS_AS(prior.validate(), epi::ValidationError);
    prior = epi::PriorSpec{};
    prior.rho_prior.beta = 0.0;
    CHECK_THROWS_AS(prior.validate(), epi::ValidationError);
}

} // TEST_SUITE
