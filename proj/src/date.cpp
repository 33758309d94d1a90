#include "invnet/date.hpp"

#include <cstdio>

namespace invnet {

std::optional<Date> Date::parse(const std::string& iso) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(iso.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3)
        return std::nullopt;
    if (m < 1 || m > 12 || d < 1 || d > 31)
        return std::nullopt;
    Date date = Date::from_ymd(y, m, d);
    // Round-trip guard catches impossible days like 2004-02-30.
    auto c = detail::civil_from_days(date.days_since_epoch());
    if (c.year != y || c.month != m || c.day != d)
        return std::nullopt;
    return date;
}

std::string Date::to_string() const {
    auto c = detail::civil_from_days(days_);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", c.year, c.month, c.day);
    return std::string(buf);
}

}  // namespace invnet
