#include "spreadnet/timeutil.hpp"

#include <cctype>
#include <cstdio>

#include "spreadnet/util.hpp"

namespace spreadnet {

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = doy - (153 * mp + 2) / 5 + 1;
    month = mp < 10 ? mp + 3 : mp - 9;
    year = static_cast<int>(y + (month <= 2));
}

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(int y, unsigned m) {
    static const unsigned table[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return table[m - 1];
}

int read_digits(const std::string& s, std::size_t pos, std::size_t n) {
    int v = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (pos + i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos + i]))) return -1;
        v = v * 10 + (s[pos + i] - '0');
    }
    return v;
}

[[noreturn]] void bad(const std::string& s) {
    throw ValidationError("unparseable timestamp: \"" + s + "\"");
}

}  // namespace

std::int64_t parse_iso8601(const std::string& s) {
    // YYYY-MM-DD 'T' or ' ' HH:MM:SS [.fff] [Z | +HH:MM | -HH:MM]
    if (s.size() < 19) bad(s);
    const int year = read_digits(s, 0, 4);
    const int month = read_digits(s, 5, 2);
    const int day = read_digits(s, 8, 2);
    const int hour = read_digits(s, 11, 2);
    const int minute = read_digits(s, 14, 2);
    const int second = read_digits(s, 17, 2);
    if (year < 0 || month < 0 || day < 0 || hour < 0 || minute < 0 || second < 0) bad(s);
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' || s[16] != ':') bad(s);
    if (month < 1 || month > 12) bad(s);
    if (day < 1 || static_cast<unsigned>(day) > days_in_month(year, static_cast<unsigned>(month))) bad(s);
    if (hour > 23 || minute > 59 || second > 60) bad(s);

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0) bad(s);
    }
    std::int64_t offset = 0;
    if (pos < s.size()) {
        const char c = s[pos];
        if (c == 'Z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            const int oh = read_digits(s, pos + 1, 2);
            std::size_t opos = pos + 3;
            if (opos < s.size() && s[opos] == ':') ++opos;
            const int om = read_digits(s, opos, 2);
            if (oh < 0 || om < 0 || oh > 23 || om > 59) bad(s);
            offset = (std::int64_t(oh) * 3600 + std::int64_t(om) * 60) * (c == '-' ? -1 : 1);
            pos = opos + 2;
        } else {
            bad(s);
        }
    }
    if (pos != s.size()) bad(s);

    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    std::int64_t secs = second == 60 ? 59 : second;  // fold leap seconds
    return days * 86400 + std::int64_t(hour) * 3600 + std::int64_t(minute) * 60 + secs - offset;
}

std::string format_iso8601(std::int64_t t) {
    const std::int64_t days = floor_div(t, 86400);
    std::int64_t rem = t - days * 86400;
    int year;
    unsigned month, day;
    civil_from_days(days, year, month, day);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", year, month, day,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

std::int64_t epoch_day(std::int64_t epoch_seconds) { return floor_div(epoch_seconds, 86400); }

}  // namespace spreadnet
