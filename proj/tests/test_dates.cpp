#include "doctest.h"
#include "epi/dates.hpp"

using epi::Date;

TEST_SUITE("dates") {

TEST_CASE("well-formed dates parse") {
    const auto d = Date::parse("2020-03-01");
    REQUIRE(d.has_value());
    CHECK(d->year == 2020);
    CHECK(d->month == 3);
    CHECK(d->day == 1);
    CHECK(Date::parse("1999-12-31").has_value());
    CHECK(Date::parse("2020-02-29").has_value()); // leap year
}

TEST_CASE("calendar validity is enforced") {
    CHECK_FALSE(Date::parse("2021-02-29").has_value()); // not a leap year
    CHECK_FALSE(Date::parse("1900-02-29").has_value()); // century, not leap
    CHECK(Date::parse("2000-02-29").has_value());       // 400-year rule
    CHECK_FALSE(Date::parse("2020-04-31").has_value());
    CHECK_FALSE(Date::parse("2020-13-01").has_value());
    CHECK_FALSE(Date::parse("2020-00-10").has_value());
    CHECK_FALSE(Date::parse("2020-01-00").has_value());
}

TEST_CASE("malformed text is rejected") {
    CHECK_FALSE(Date::parse("").has_value());
    CHECK_FALSE(Date::parse("2020-3-01").has_value());  // missing zero-pad
    CHECK_FALSE(Date::parse("2020/03/01").has_value());
    CHECK_FALSE(Date::parse("20-03-01").has_value());
    CHECK_FALSE(Date::parse("2020-03-01x").has_value());
    CHECK_FALSE(Date::parse("yesterday").has_value());
    CHECK_FALSE(Date::parse("2020-03").has_value());
}

TEST_CASE("day arithmetic round-trips through the epoch count") {
    const Date epoch{1970, 1, 1};
    CHECK(epoch.to_days() == 0);
    CHECK(Date::from_days(0) == epoch);

    // Spot values across leap boundaries.
    const Date d{2020, 3, 1};
    CHECK(Date::from_days(d.to_days()) == d);
    for (long offset : {1L, 30L, 365L, 366L, 1461L}) {
        const Date shifted = Date::from_days(d.to_days() + offset);
        CHECK(shifted.to_days() == d.to_days() + offset);
    }

    // Dense scan round-trip across several years including leap Februarys.
    long day_number = Date{2019, 12, 25}.to_days();
    for (int i = 0; i < 900; ++i) {
        const Date date = Date::from_days(day_number);
        CHECK(date.to_days() == day_number);
        ++day_number;
    }
}

TEST_CASE("next_day crosses month and year boundaries") {
    CHECK(Date{2020, 2, 28}.next_day() == Date{2020, 2, 29});
    CHECK(Date{2020, 2, 29}.next_day() == Date{2020, 3, 1});
    CHECK(Date{2021, 2, 28}.next_day() == Date{2021, 3, 1});
    CHECK(Date{2020, 12, 31}.next_day() == Date{2021, 1, 1});
    CHECK(Date{2020, 4, 30}.next_day() == Date{2020, 5, 1});
}

TEST_CASE("text form is zero-padded ISO-8601") {
    CHECK(Date{2020, 3, 1}.to_string() == "2020-03-01");
    CHECK(Date{1999, 12, 31}.to_string() == "1999-12-31");
    CHECK(Date{2020, 11, 9}.to_string() == "2020-11-09");
    // Round-trip: to_string output re-parses to the same date.
    const Date d{2023, 7, 4};
    CHECK(Date::parse(d.to_string()) == d);
}

TEST_CASE("dates order chronologically") {
    CHECK(Date{2020, 3, 1} < Date{2020, 3, 2});
    CHECK(Date{2020, 2, 29} < Date{2020, 3, 1});
    CHECK(Date{2019, 12, 31} < Date{2020, 1, 1});
    CHECK(Date{2020, 3, 1} == Date{2020, 3, 1});
    CHECK(Date{2021, 1, 1} > Date{2020, 12, 31});
}

} // TEST_SUITE
