#include <catch2/catch_amalgamated.hpp>

#include "edsim/timestep.hpp"

using namespace edsim;

TEST_CASE("civil date conversions round-trip") {
    CHECK(days_from_civil(1970, 1, 1) == 0);
    CHECK(days_from_civil(2021, 9, 1) == 18871);
    for (i64 day : {-1000, 0, 18871, 19500, 20000}) {
        CivilDate cd = civil_from_days(day);
        CHECK(days_from_civil(cd.year, cd.month, cd.day) == day);
    }
}

TEST_CASE("hourly timestamps parse and format") {
    const HourEpoch he = parse_iso_hour("2021-09-01T00:00");
    CHECK(he == hour_epoch(2021, 9, 1, 0));
    CHECK(format_iso_hour(he) == "2021-09-01T00:00");
    CHECK(parse_iso_hour("2021-09-01 13:00") == he + 13);
    CHECK(parse_iso_hour("2021-09-01T13:00:00") == he + 13);
    CHECK_THROWS_AS(parse_iso_hour("2021-09-01"), ValidationError);
    CHECK_THROWS_AS(parse_iso_hour("2021-09-01T13:30"), ValidationError);
    CHECK_THROWS_AS(parse_iso_hour("not a date"), ValidationError);
}

TEST_CASE("month boundaries fall on the first hour of each calendar month") {
    // two full months starting 2021-09-01: 30 + 31 days
    const TimeAxis axis{hour_epoch(2021, 9, 1, 0), (30 + 31) * 24};
    CHECK(axis.month_boundary(0));
    CHECK_FALSE(axis.month_boundary(1));
    CHECK_FALSE(axis.month_boundary(30 * 24 - 1));
    CHECK(axis.month_boundary(30 * 24)); // first hour of October
    CHECK_FALSE(axis.month_boundary(30 * 24 + 1));

    const auto months = axis.months();
    REQUIRE(months.size() == 2);
    CHECK(months[0] == MonthKey{2021, 9});
    CHECK(months[1] == MonthKey{2021, 10});
}
