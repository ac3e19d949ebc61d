#include "epi/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "epi/errors.hpp"

namespace epi {

NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& objective,
    std::vector<double> x0, const std::vector<double>& step,
    const NelderMeadOptions& options) {
    const std::size_t n = x0.size();
    if (n == 0) throw ValidationError("nelder_mead: empty parameter vector");
    if (step.size() != n) throw ValidationError("nelder_mead: step size mismatch");

    // Standard coefficients: reflection, expansion, contraction, shrink.
    constexpr double alpha = 1.0;
    constexpr double gamma = 2.0;
    constexpr double beta = 0.5;
    constexpr double delta = 0.5;

    std::vector<std::vector<double>> x(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += step[i];
    std::vector<double> fx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fx[i] = objective(x[i]);

    std::vector<std::size_t> order(n + 1);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> centroid(n), reflected(n), trial(n);

    NelderMeadResult result;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];

        if (std::isfinite(fx[worst]) &&
            std::abs(fx[worst] - fx[best]) <= options.f_tolerance) {
            double extent = 0.0;
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    extent = std::max(extent, std::abs(x[i][j] - x[best][j]));
                }
            }
            if (extent <= options.x_tolerance) {
                result.converged = true;
                break;
            }
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += x[order[i]][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        for (std::size_t j = 0; j < n; ++j) {
            reflected[j] = centroid[j] + alpha * (centroid[j] - x[worst][j]);
        }
        const double f_reflected = objective(reflected);

        if (f_reflected < fx[best]) {
            for (std::size_t j = 0; j < n; ++j) {
                trial[j] = centroid[j] + gamma * (reflected[j] - centroid[j]);
            }
            const double f_expanded = objective(trial);
            if (f_expanded < f_reflected) {
                x[worst] = trial;
                fx[worst] = f_expanded;
            } else {
                x[worst] = reflected;
                fx[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fx[second_worst]) {
            x[worst] = reflected;
            fx[worst] = f_reflected;
            continue;
        }

        if (f_reflected < fx[worst]) {
            for (std::size_t j = 0; j < n; ++j) {
                trial[j] = centroid[j] + beta * (reflected[j] - centroid[j]);
            }
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                trial[j] = centroid[j] + beta * (x[worst][j] - centroid[j]);
            }
        }
        const double f_contracted = objective(trial);
        if (f_contracted < std::min(f_reflected, fx[worst])) {
            x[worst] = trial;
            fx[worst] = f_contracted;
            continue;
        }

        for (std::size_t i = 1; i <= n; ++i) {
            std::vector<double>& xi = x[order[i]];
            for (std::size_t j = 0; j < n; ++j) {
                xi[j] = x[order[0]][j] + delta * (xi[j] - x[order[0]][j]);
            }
            fx[order[i]] = objective(xi);
        }
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(fx.begin(), fx.end()) - fx.begin());
    result.x = x[best];
    result.f = fx[best];
    result.iterations = it;
    return result;
}

} // namespace epi
