#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mailgraph {

// Timestamps are seconds since the Unix epoch, UTC.

// Parses an RFC-2822 style Date header. Accepted shapes:
//   [Wkd, ]D Mon YYYY HH:MM[:SS] [+-HHMM] [(comment)]
// Two-digit years follow the RFC rule (<50 -> 2000s). A missing or
// GMT/UT/UTC zone is treated as +0000; other named zones are rejected.
std::optional<std::int64_t> parse_rfc2822(std::string_view s);

std::string format_rfc2822_utc(std::int64_t t);

// 2001-05-14T23:39:00Z
std::string format_iso8601_utc(std::int64_t t);
std::optional<std::int64_t> parse_iso8601_utc(std::string_view s);

// YYYY-MM-DD -> midnight UTC of that day.
std::optional<std::int64_t> parse_date(std::string_view s);

struct YearMonth {
    int year = 0;
    int month = 0; // 1..12
    auto operator<=>(const YearMonth&) const = default;
};

YearMonth year_month_of(std::int64_t t);
std::string format_year_month(YearMonth ym);
std::optional<YearMonth> parse_year_month(std::string_view s); // YYYY-MM

std::int64_t month_start(YearMonth ym);
std::int64_t month_end_inclusive(YearMonth ym); // last second of the month

} // namespace mailgraph
