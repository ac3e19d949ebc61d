#ifndef EPI_DATES_HPP
#define EPI_DATES_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace epi {

/// Calendar date with ISO-8601 (YYYY-MM-DD) text form and day arithmetic.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    /// Strict YYYY-MM-DD parse with calendar validity; nullopt on failure.
    static std::optional<Date> parse(std::string_view text);

    /// Days since 1970-01-01 (proleptic Gregorian).
    long to_days() const;
    static Date from_days(long days);

    Date next_day() const { return from_days(to_days() + 1); }

    std::string to_string() const;

    friend auto operator<=>(const Date&, const Date&) = default;
};

} // namespace epi

#endif
