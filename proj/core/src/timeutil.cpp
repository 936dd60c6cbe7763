#include "parksent/timeutil.hpp"

#include <cctype>
#include <cstdio>

#include "parksent/errors.hpp"

namespace parksent {

namespace detail {

// Howard Hinnant's proleptic Gregorian conversions.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

}  // namespace detail

namespace {

bool read_fixed_digits(std::string_view s, std::size_t pos, int count, int& out) {
    if (pos + count > s.size()) return false;
    int v = 0;
    for (int i = 0; i < count; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

[[noreturn]] void bad_timestamp(std::string_view text) {
    throw ValidationError("malformed RFC 3339 timestamp: '" + std::string(text) + "'");
}

}  // namespace

Instant parse_rfc3339(std::string_view text) {
    // YYYY-MM-DD 'T' HH:MM:SS [.frac] (Z | ±HH:MM | ±HHMM)
    int year, month, day, hour, minute, second;
    if (!read_fixed_digits(text, 0, 4, year) || text.size() < 20 || text[4] != '-' ||
        !read_fixed_digits(text, 5, 2, month) || text[7] != '-' ||
        !read_fixed_digits(text, 8, 2, day) ||
        (text[10] != 'T' && text[10] != 't' && text[10] != ' ') ||
        !read_fixed_digits(text, 11, 2, hour) || text[13] != ':' ||
        !read_fixed_digits(text, 14, 2, minute) || text[16] != ':' ||
        !read_fixed_digits(text, 17, 2, second))
        bad_timestamp(text);
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60)
        bad_timestamp(text);

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0) bad_timestamp(text);
    }
    if (pos >= text.size()) bad_timestamp(text);

    int offset_seconds = 0;
    const char tzc = text[pos];
    if (tzc == 'Z' || tzc == 'z') {
        if (pos + 1 != text.size()) bad_timestamp(text);
    } else if (tzc == '+' || tzc == '-') {
        int oh = 0, om = 0;
        if (!read_fixed_digits(text, pos + 1, 2, oh)) bad_timestamp(text);
        std::size_t mpos = pos + 3;
        if (mpos < text.size() && text[mpos] == ':') ++mpos;
        if (!read_fixed_digits(text, mpos, 2, om) || mpos + 2 != text.size()) bad_timestamp(text);
        if (oh > 23 || om > 59) bad_timestamp(text);
        offset_seconds = (oh * 3600 + om * 60) * (tzc == '-' ? -1 : 1);
    } else {
        bad_timestamp(text);
    }

    if (second == 60) second = 59;  // fold leap seconds
    const std::int64_t days = detail::days_from_civil(year, static_cast<unsigned>(month),
                                                      static_cast<unsigned>(day));
    return days * 86400 + hour * 3600 + minute * 60 + second - offset_seconds;
}

std::string format_rfc3339_utc(Instant t) {
    std::int64_t days = t / 86400;
    std::int64_t sod = t % 86400;
    if (sod < 0) {
        sod += 86400;
        --days;
    }
    int y;
    unsigned m, d;
    detail::civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", y, m, d,
                  static_cast<long long>(sod / 3600), static_cast<long long>(sod / 60 % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

TzOffset TzOffset::parse(std::string_view spec) {
    std::string_view s = spec;
    if (s.empty()) throw ValidationError("empty timezone spec");
    if (s == "Z" || s == "UTC" || s == "utc") return TzOffset{0};
    if (s.substr(0, 3) == "UTC" || s.substr(0, 3) == "utc") s.remove_prefix(3);
    if (s.empty()) return TzOffset{0};

    const char sign = s[0];
    if (sign != '+' && sign != '-') {
        throw ValidationError("unsupported timezone '" + std::string(spec) +
                              "': use a fixed UTC offset such as UTC-7 or +05:30 "
                              "(IANA zone names need a tz database, which is not linked)");
    }
    s.remove_prefix(1);

    int hours = 0, minutes = 0;
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == 0 || (i > 2 && i != s.size()) || i > 4)
        throw ValidationError("bad offset in timezone '" + std::string(spec) + "'");
    if (i > 2) {
        // compact HMM / HHMM form
        for (std::size_t k = 0; k + 2 < i; ++k) hours = hours * 10 + (s[k] - '0');
        minutes = (s[i - 2] - '0') * 10 + (s[i - 1] - '0');
        s.remove_prefix(i);
    } else {
        for (std::size_t k = 0; k < i; ++k) hours = hours * 10 + (s[k] - '0');
        s.remove_prefix(i);
        if (!s.empty()) {
            if (s[0] == ':') s.remove_prefix(1);
            if (s.size() != 2 || !std::isdigit(static_cast<unsigned char>(s[0])) ||
                !std::isdigit(static_cast<unsigned char>(s[1])))
                throw ValidationError("bad offset in timezone '" + std::string(spec) + "'");
            minutes = (s[0] - '0') * 10 + (s[1] - '0');
        }
    }
    if (hours > 23 || minutes > 59)
        throw ValidationError("offset out of range in timezone '" + std::string(spec) + "'");
    const int total = (hours * 3600 + minutes * 60) * (sign == '-' ? -1 : 1);
    return TzOffset{total};
}

std::string TzOffset::name() const {
    if (seconds == 0) return "UTC";
    const int abs_s = seconds < 0 ? -seconds : seconds;
    char buf[16];
    std::snprintf(buf, sizeof buf, "UTC%c%02d:%02d", seconds < 0 ? '-' : '+', abs_s / 3600,
                  abs_s / 60 % 60);
    return buf;
}

std::int64_t local_civil_day(Instant t, TzOffset tz) {
    const std::int64_t shifted = t + tz.seconds;
    // floor division
    return shifted >= 0 ? shifted / 86400 : (shifted - 86399) / 86400;
}

std::string format_civil_day(std::int64_t days) {
    int y;
    unsigned m, d;
    detail::civil_from_days(days, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return buf;
}

}  // namespace parksent
