#ifndef EPI_SERIES_HPP
#define EPI_SERIES_HPP

#include <cstdint>
#include <vector>

#include "epi/dates.hpp"

namespace epi {

/// Minimum usable series length for fitting.
inline constexpr std::size_t kMinSeriesLength = 14;

/// Daily reported new-case counts for one region. Dates are sorted, unique,
/// and aligned one-to-one with counts; negative revisions must be cleaned
/// upstream.
struct ObservedSeries {
    std::vector<Date> dates;
    std::vector<std::int64_t> counts;
    double population = 0.0;

    void validate() const;
};

} // namespace epi

#endif
