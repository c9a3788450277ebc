// Hourly simulation clock over naive calendar timestamps.
#pragma once

#include <compare>
#include <cstdio>
#include <string>
#include <vector>

#include "edsim/common.hpp"

namespace edsim {

// Days since 1970-01-01 from a proleptic Gregorian date.
inline i64 days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const i64 era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<i64>(doe) - 719468;
}

struct CivilDate {
    int year;
    unsigned month;
    unsigned day;
};

inline CivilDate civil_from_days(i64 z) {
    z += 719468;
    const i64 era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const i64 y = static_cast<i64>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), m, d};
}

struct MonthKey {
    int year = 0;
    unsigned month = 0;

    friend auto operator<=>(const MonthKey&, const MonthKey&) = default;
};

// Hours since 1970-01-01T00:00.
using HourEpoch = i64;

inline HourEpoch hour_epoch(int y, unsigned mo, unsigned d, unsigned h) {
    return days_from_civil(y, mo, d) * 24 + static_cast<i64>(h);
}

inline MonthKey month_of(HourEpoch he) {
    const i64 day = (he >= 0 ? he : he - 23) / 24;
    CivilDate cd = civil_from_days(day);
    return MonthKey{cd.year, cd.month};
}

// Accepts "YYYY-MM-DDTHH:MM" with 'T' or ' ' separator, optional ":SS".
inline HourEpoch parse_iso_hour(const std::string& text) {
    int y = 0;
    unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char sep = 0;
    int n = std::sscanf(text.c_str(), "%d-%u-%u%c%u:%u:%u", &y, &mo, &d, &sep, &h, &mi, &s);
    if (n < 6 || (sep != 'T' && sep != ' ') || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 ||
        mi != 0 || (n == 7 && s != 0)) {
        throw ValidationError("bad hourly timestamp: '" + text + "'");
    }
    return hour_epoch(y, mo, d, h);
}

inline std::string format_iso_hour(HourEpoch he) {
    const i64 day = (he >= 0 ? he : he - 23) / 24;
    const unsigned h = static_cast<unsigned>(he - day * 24);
    CivilDate cd = civil_from_days(day);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02u:00", cd.year, cd.month, cd.day, h);
    return std::string(buf);
}

struct TimeStep {
    u64 index = 0;
    HourEpoch hour = 0;

    MonthKey month() const { return month_of(hour); }
};

// Dense hourly axis [start, start + count).
struct TimeAxis {
    HourEpoch start = 0;
    u64 count = 0;

    TimeStep at(u64 index) const { return TimeStep{index, start + static_cast<i64>(index)}; }

    // true when `index` is the first hour of its calendar month within the axis
    bool month_boundary(u64 index) const {
        if (index == 0) return true;
        return month_of(start + static_cast<i64>(index)) !=
               month_of(start + static_cast<i64>(index) - 1);
    }

    std::vector<MonthKey> months() const {
        std::vector<MonthKey> out;
        for (u64 i = 0; i < count; ++i) {
            MonthKey mk = month_of(start + static_cast<i64>(i));
            if (out.empty() || out.back() != mk) out.push_back(mk);
        }
        return out;
    }
};

} // namespace edsim
