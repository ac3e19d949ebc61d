#include "epi/stats.hpp"

#include <algorithm>
#include <cmath>

#include "epi/errors.hpp"

namespace epi {

double mean(std::span<const double> values) {
    if (values.empty()) throw ValidationError("mean of empty range");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double stddev_population(std::span<const double> values) {
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ValidationError("quantile of empty range");
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("quantile p must lie in [0, 1]");
    const std::size_t n = sorted.size();
    const double h = p * static_cast<double>(n);
    if (h <= 1.0) return sorted[0];
    if (h >= static_cast<double>(n)) return sorted[n - 1];
    const std::size_t lo = static_cast<std::size_t>(h); // floor, 1-based rank
    const double frac = h - static_cast<double>(lo);
    return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

double quantile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, p);
}

} // namespace epi
