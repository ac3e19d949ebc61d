#ifndef EPI_CASES_HPP
#define EPI_CASES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "epi/dates.hpp"
#include "epi/series.hpp"

namespace epi {

/// What to do when the date column has gaps.
enum class MissingDatePolicy {
    Error,    // any gap is a validation error
    ZeroFill, // fill gaps with zero counts and record a warning
};

struct CaseRow {
    Date date;
    std::int64_t count = 0;
};

/// Parse rows from a `date,new_cases` CSV stream: header checked, dates
/// ISO-8601, counts non-negative integers. Output is sorted by date with
/// duplicate dates rejected. Errors cite 1-based line numbers (header is
/// line 1). Length and gap policy are the caller's concern; see load_cases.
std::vector<CaseRow> read_case_rows(std::istream& in,
                                    const std::string& source_name);

/// Load a daily case series for fitting: parse, sort, apply the gap policy,
/// and enforce the minimum usable length. Warnings (currently only from
/// zero-filling) are appended to *warnings when provided.
ObservedSeries load_cases(const std::string& path, double population,
                          MissingDatePolicy missing = MissingDatePolicy::Error,
                          std::vector<std::string>* warnings = nullptr);

} // namespace epi

#endif
