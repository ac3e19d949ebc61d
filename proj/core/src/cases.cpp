#include "epi/cases.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "epi/errors.hpp"

namespace epi {

void ObservedSeries::validate() const {
    if (dates.size() != counts.size()) {
        throw ValidationError("case series: dates and counts lengths differ");
    }
    if (counts.size() < kMinSeriesLength) {
        throw ValidationError(
            "case series too short: " + std::to_string(counts.size()) +
            " days, need at least " + std::to_string(kMinSeriesLength));
    }
    if (!(population > 0.0) || !std::isfinite(population)) {
        throw ValidationError("case series: population must be positive and finite");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0) {
            throw ValidationError("case series: negative count on " +
                                  dates[i].to_string());
        }
    }
    // The likelihood aligns counts with simulated days by index, so the
    // calendar must be gap-free.
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (dates[i] != dates[i - 1].next_day()) {
            throw ValidationError("case series: dates must be consecutive days (" +
                                  dates[i - 1].to_string() + " is followed by " +
                                  dates[i].to_string() + ")");
        }
    }
}

namespace {

[[noreturn]] void row_error(const std::string& source, std::size_t line,
                            const std::string& what) {
    throw ValidationError(source + ":" + std::to_string(line) + ": " + what);
}

} // namespace

std::vector<CaseRow> read_case_rows(std::istream& in,
                                    const std::string& source_name) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) {
        throw ValidationError(source_name + ": empty file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "date,new_cases") {
        row_error(source_name, line_no,
                  "expected header 'date,new_cases', got '" + line + "'");
    }

    std::vector<CaseRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            row_error(source_name, line_no, "blank line");
        }

        const auto comma = line.find(',');
        if (comma == std::string::npos ||
            line.find(',', comma + 1) != std::string::npos) {
            row_error(source_name, line_no, "expected exactly two fields");
        }
        const std::string date_field = line.substr(0, comma);
        const std::string count_field = line.substr(comma + 1);

        const auto date = Date::parse(date_field);
        if (!date) {
            row_error(source_name, line_no,
                      "unparsable date '" + date_field + "' (want YYYY-MM-DD)");
        }

        std::int64_t count = 0;
        const char* first = count_field.data();
        const char* last = first + count_field.size();
        const auto parsed = std::from_chars(first, last, count);
        if (parsed.ec != std::errc() || parsed.ptr != last) {
            row_error(source_name, line_no,
                      "unparsable count '" + count_field + "'");
        }
        if (count < 0) {
            row_error(source_name, line_no,
                      "negative count " + std::to_string(count));
        }

        rows.push_back(CaseRow{*date, count});
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const CaseRow& a, const CaseRow& b) {
                         return a.date < b.date;
                     });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw ValidationError(source_name + ": duplicate date " +
                                  rows[i].date.to_string());
        }
    }
    return rows;
}

ObservedSeries load_cases(const std::string& path, double population,
                          MissingDatePolicy missing,
                          std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open cases file: " + path);
    }
    const auto rows = read_case_rows(in, path);

    ObservedSeries series;
    series.population = population;
    series.dates.reserve(rows.size());
    series.counts.reserve(rows.size());

    std::size_t filled = 0;
    for (const auto& row : rows) {
        if (!series.dates.empty()) {
            Date expected = series.dates.back().next_day();
            if (row.date > expected && missing == MissingDatePolicy::Error) {
                throw ValidationError(
                    path + ": missing dates between " +
                    series.dates.back().to_string() + " and " +
                    row.date.to_string() +
                    " (use zero-fill to accept gaps)");
            }
            while (expected < row.date) {
                series.dates.push_back(expected);
                series.counts.push_back(0);
                ++filled;
                expected = expected.next_day();
            }
        }
        series.dates.push_back(row.date);
        series.counts.push_back(row.count);
    }
    if (filled > 0 && warnings != nullptr) {
        warnings->push_back(path + ": zero-filled " + std::to_string(filled) +
                            " missing date(s)");
    }

    series.validate();
    return series;
}

} // namespace epi
