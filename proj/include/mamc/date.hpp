#pragma once

#include <chrono>
#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mamc {

// Calendar date with day resolution. Thin wrapper over std::chrono::sys_days
// so that day arithmetic and weekday queries come from the standard calendar.
class Date {
public:
    Date() = default;

    Date(int year, unsigned month, unsigned day) {
        const std::chrono::year_month_day ymd{std::chrono::year{year},
                                              std::chrono::month{month},
                                              std::chrono::day{day}};
        if (!ymd.ok()) {
            throw std::invalid_argument("invalid calendar date");
        }
        days_ = std::chrono::sys_days{ymd};
    }

    // Strict ISO-8601 "YYYY-MM-DD".
    static Date parse(std::string_view text) {
        if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
            throw std::invalid_argument("expected ISO-8601 date (YYYY-MM-DD): '" +
                                        std::string(text) + "'");
        }
        const auto digits = [&](std::size_t pos, std::size_t len) {
            int value = 0;
            for (std::size_t i = pos; i < pos + len; ++i) {
                const char c = text[i];
                if (c < '0' || c > '9') {
                    throw std::invalid_argument("expected ISO-8601 date (YYYY-MM-DD): '" +
                                                std::string(text) + "'");
                }
                value = value * 10 + (c - '0');
            }
            return value;
        };
        return Date(digits(0, 4), static_cast<unsigned>(digits(5, 2)),
                    static_cast<unsigned>(digits(8, 2)));
    }

    std::string to_string() const {
        const std::chrono::year_month_day ymd{days_};
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                      unsigned(ymd.month()), unsigned(ymd.day()));
        return buf;
    }

    // Days since the epoch; stable key for hashing and ordering.
    long serial() const { return static_cast<long>(days_.time_since_epoch().count()); }

    bool is_weekday() const {
        const std::chrono::weekday wd{days_};
        return wd != std::chrono::Saturday && wd != std::chrono::Sunday;
    }

    Date next_day() const {
        Date d;
        d.days_ = days_ + std::chrono::days{1};
        return d;
    }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

// Number of Mon-Fri days in (from, to]. Calendar fallback used when no
// exchange calendar (price series) covers the interval.
inline int weekdays_between(Date from, Date to) {
    int n = 0;
    for (Date d = from.next_day(); d <= to; d = d.next_day()) {
        if (d.is_weekday()) ++n;
    }
    return n;
}

}  // namespace mamc
