#ifndef EPI_STATS_HPP
#define EPI_STATS_HPP

#include <span>
#include <vector>

namespace epi {

double mean(std::span<const double> values);

/// Population standard deviation (divides by n).
double stddev_population(std::span<const double> values);

/// Quantile by linear interpolation between order statistics with rank
/// h = n * p (1-based): Q(p) = x_(floor(h)) + frac(h) * (x_(floor(h)+1) - x_(floor(h))),
/// indices clamped to [1, n]. For p = k/n this returns the k-th order
/// statistic exactly.
double quantile_sorted(std::span<const double> sorted, double p);

/// As quantile_sorted but sorts a copy first.
double quantile(std::vector<double> values, double p);

} // namespace epi

#endif
