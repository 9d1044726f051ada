#include "mailgraph/datetime.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "mailgraph/text.hpp"

namespace mailgraph {

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "jan", "feb", "mar", "apr", "may", "jun",
    "jul", "aug", "sep", "oct", "nov", "dec"};

constexpr std::array<std::string_view, 7> kDayNames = {
    "Thu", "Fri", "Sat", "Sun", "Mon", "Tue", "Wed"}; // epoch day 0 was a Thursday

std::int64_t days_from_civil(int y, int m, int d) {
    using namespace std::chrono;
    return sys_days{year{y} / m / d}.time_since_epoch().count();
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    using namespace std::chrono;
    year_month_day ymd{sys_days{days{z}}};
    y = static_cast<int>(ymd.year());
    m = static_cast<int>(static_cast<unsigned>(ymd.month()));
    d = static_cast<int>(static_cast<unsigned>(ymd.day()));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eof() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }

    // Reads 1..max_digits decimal digits.
    std::optional<int> read_int(int max_digits, int* digits = nullptr) {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && pos - start < static_cast<std::size_t>(max_digits) &&
               s[pos] >= '0' && s[pos] <= '9')
            ++pos;
        if (pos == start) return std::nullopt;
        if (digits) *digits = static_cast<int>(pos - start);
        int value = 0;
        std::from_chars(s.data() + start, s.data() + pos, value);
        return value;
    }

    std::string_view read_alpha() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               ((s[pos] >= 'a' && s[pos] <= 'z') || (s[pos] >= 'A' && s[pos] <= 'Z')))
            ++pos;
        return s.substr(start, pos - start);
    }
};

std::optional<int> month_from_name(std::string_view name) {
    if (name.size() < 3) return std::nullopt;
    std::string lowered = to_lower(name.substr(0, 3));
    for (std::size_t i = 0; i < kMonthNames.size(); ++i)
        if (lowered == kMonthNames[i]) return static_cast<int>(i) + 1;
    return std::nullopt;
}

bool is_valid_ymd(int y, int m, int d) {
    using namespace std::chrono;
    return year_month_day{year{y} / m / d}.ok();
}

} // namespace

std::optional<std::int64_t> parse_rfc2822(std::string_view raw) {
    Cursor c{trim(raw)};

    // Optional day-of-week followed by a comma.
    std::size_t checkpoint = c.pos;
    std::string_view alpha = c.read_alpha();
    if (!alpha.empty()) {
        c.skip_ws();
        if (c.peek() == ',') {
            ++c.pos;
        } else {
            c.pos = checkpoint; // not a weekday prefix; rewind
        }
    }

    auto day = c.read_int(2);
    if (!day) return std::nullopt;
    auto month = month_from_name(c.read_alpha());
    if (!month) return std::nullopt;
    int year_digits = 0;
    auto year = c.read_int(4, &year_digits);
    if (!year) return std::nullopt;
    int y = *year;
    if (year_digits == 2) y += (y < 50) ? 2000 : 1900;
    else if (year_digits == 3) y += 1900;

    auto hour = c.read_int(2);
    c.skip_ws();
    if (!hour || c.peek() != ':') return std::nullopt;
    ++c.pos;
    auto minute = c.read_int(2);
    if (!minute) return std::nullopt;
    int second = 0;
    c.skip_ws();
    if (c.peek() == ':') {
        ++c.pos;
        auto sec = c.read_int(2);
        if (!sec) return std::nullopt;
        second = *sec;
    }

    // Zone: numeric offset, a known UTC alias, or absent.
    int offset_seconds = 0;
    c.skip_ws();
    if (c.peek() == '+' || c.peek() == '-') {
        int sign = (c.peek() == '-') ? -1 : 1;
        ++c.pos;
        std::size_t start = c.pos;
        auto hhmm = c.read_int(4);
        if (!hhmm || c.pos - start != 4) return std::nullopt;
        offset_seconds = sign * ((*hhmm / 100) * 3600 + (*hhmm % 100) * 60);
    } else {
        std::string_view zone = c.read_alpha();
        if (!zone.empty() && !iequals(zone, "GMT") && !iequals(zone, "UT") &&
            !iequals(zone, "UTC"))
            return std::nullopt;
    }
    // Anything left must be a parenthesized comment.
    c.skip_ws();
    if (!c.eof() && c.peek() != '(') return std::nullopt;

    if (*hour > 23 || *minute > 59 || second > 60) return std::nullopt;
    if (!is_valid_ymd(y, *month, *day)) return std::nullopt;

    std::int64_t t = days_from_civil(y, *month, *day) * 86400 +
                     *hour * 3600LL + *minute * 60LL + second;
    return t - offset_seconds;
}

std::string format_rfc2822_utc(std::int64_t t) {
    std::int64_t days = floor_div(t, 86400);
    std::int64_t rem = t - days * 86400;
    int y, m, d;
    civil_from_days(days, y, m, d);
    std::string_view weekday = kDayNames[((days % 7) + 7) % 7];
    char buf[48];
    std::string mon(kMonthNames[m - 1]);
    mon[0] = static_cast<char>(mon[0] - 'a' + 'A');
    std::snprintf(buf, sizeof(buf), "%.*s, %02d %s %04d %02d:%02d:%02d +0000",
                  static_cast<int>(weekday.size()), weekday.data(), d, mon.c_str(), y,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

std::string format_iso8601_utc(std::int64_t t) {
    std::int64_t days = floor_div(t, 86400);
    std::int64_t rem = t - days * 86400;
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

std::optional<std::int64_t> parse_iso8601_utc(std::string_view s) {
    s = trim(s);
    int y, mo, d, h, mi, sec;
    if (std::sscanf(std::string(s).c_str(), "%d-%d-%dT%d:%d:%dZ", &y, &mo, &d, &h, &mi,
                    &sec) != 6)
        return std::nullopt;
    if (mo < 1 || mo > 12 || !is_valid_ymd(y, mo, d)) return std::nullopt;
    if (h > 23 || mi > 59 || sec > 60 || h < 0 || mi < 0 || sec < 0) return std::nullopt;
    return days_from_civil(y, mo, d) * 86400 + h * 3600LL + mi * 60LL + sec;
}

std::optional<std::int64_t> parse_date(std::string_view s) {
    s = trim(s);
    int y, mo, d;
    char tail;
    std::string str(s);
    if (std::sscanf(str.c_str(), "%d-%d-%d%c", &y, &mo, &d, &tail) != 3) return std::nullopt;
    if (mo < 1 || mo > 12 || !is_valid_ymd(y, mo, d)) return std::nullopt;
    return days_from_civil(y, mo, d) * 86400;
}

YearMonth year_month_of(std::int64_t t) {
    int y, m, d;
    civil_from_days(floor_div(t, 86400), y, m, d);
    return {y, m};
}

std::string format_year_month(YearMonth ym) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
    return buf;
}

std::optional<YearMonth> parse_year_month(std::string_view s) {
    s = trim(s);
    int y, m;
    char tail;
    std::string str(s);
    if (std::sscanf(str.c_str(), "%d-%d%c", &y, &m, &tail) != 2) return std::nullopt;
    if (m < 1 || m > 12) return std::nullopt;
    return YearMonth{y, m};
}

std::int64_t month_start(YearMonth ym) {
    return days_from_civil(ym.year, ym.month, 1) * 86400;
}

std::int64_t month_end_inclusive(YearMonth ym) {
    int y = ym.year, m = ym.month + 1;
    if (m > 12) {
        m = 1;
        ++y;
    }
    return days_from_civil(y, m, 1) * 86400 - 1;
}

} // namespace mailgraph
