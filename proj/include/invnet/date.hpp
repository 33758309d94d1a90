// Minimal civil-date type: day-precision calendar dates stored as a day
// count since 1970-01-01. Covers ISO parsing/formatting and the month
// arithmetic needed for window tiling.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace invnet {

namespace detail {

// Howard Hinnant's civil-date algorithms.
constexpr std::int32_t days_from_civil(int y, unsigned m, unsigned d) noexcept {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int32_t>(doe) - 719468;
}

struct CivilDate {
    int year;
    unsigned month;
    unsigned day;
};

constexpr CivilDate civil_from_days(std::int32_t z) noexcept {
    z += 719468;
    const int era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {y + (m <= 2), m, d};
}

}  // namespace detail

class Date {
public:
    Date() = default;
    constexpr explicit Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

    static constexpr Date from_ymd(int year, unsigned month, unsigned day) {
        return Date(detail::days_from_civil(year, month, day));
    }

    // Parses "YYYY-MM-DD". Rejects out-of-range month/day.
    static std::optional<Date> parse(const std::string& iso);

    constexpr std::int32_t days_since_epoch() const { return days_; }
    int year() const { return detail::civil_from_days(days_).year; }
    unsigned month() const { return detail::civil_from_days(days_).month; }
    unsigned day() const { return detail::civil_from_days(days_).day; }

    // Zero-based month counter (year*12 + month-1); windows are cut on these.
    int month_index() const {
        auto c = detail::civil_from_days(days_);
        return c.year * 12 + static_cast<int>(c.month) - 1;
    }

    std::string to_string() const;  // ISO "YYYY-MM-DD"

    friend constexpr auto operator<=>(Date a, Date b) = default;

private:
    std::int32_t days_ = 0;
};

// First day of the zero-based month counter m (inverse of Date::month_index).
inline Date month_start(int month_index) {
    int y = month_index >= 0 ? month_index / 12 : (month_index - 11) / 12;
    unsigned m = static_cast<unsigned>(month_index - y * 12) + 1;
    return Date::from_ymd(y, m, 1);
}

}  // namespace invnet
