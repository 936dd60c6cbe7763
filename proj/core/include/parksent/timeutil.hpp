#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace parksent {

/// Seconds since the Unix epoch, UTC. Sub-second precision is not kept.
using Instant = std::int64_t;

/// Parse an RFC 3339 timestamp ("2016-05-19T14:00:00-07:00",
/// "2016-05-19T21:00:00Z", optional fractional seconds which are dropped).
/// Throws ValidationError on malformed input.
Instant parse_rfc3339(std::string_view text);

/// Format as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339_utc(Instant t);

/// Fixed UTC offset used as the study timezone. Accepted spellings:
/// "UTC", "UTC-7", "UTC+05:30", "-07:00", "+0530", "Z".
/// IANA zone names are rejected with a hint (no tz database is linked).
struct TzOffset {
    int seconds = 0;

    static TzOffset parse(std::string_view spec);
    static TzOffset utc_minus_7() { return TzOffset{-7 * 3600}; }

    std::string name() const;
};

/// Civil calendar day (days since 1970-01-01) of an instant in the given
/// study timezone.
std::int64_t local_civil_day(Instant t, TzOffset tz);

/// "YYYY-MM-DD" for a civil day number.
std::string format_civil_day(std::int64_t days);

namespace detail {
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);
}  // namespace detail

}  // namespace parksent
