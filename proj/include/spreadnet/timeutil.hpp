#pragma once

#include <cstdint>
#include <string>

namespace spreadnet {

/// Parses an ISO-8601 instant ("2015-01-07T12:00:00Z", optional fractional
/// seconds, optional +HH:MM / -HH:MM offset, missing zone read as UTC) to
/// seconds since the Unix epoch. Fractional seconds are truncated.
/// Throws ValidationError on malformed or out-of-range input.
std::int64_t parse_iso8601(const std::string& s);

/// Formats epoch seconds as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(std::int64_t epoch_seconds);

/// UTC calendar day index (days since 1970-01-01, floor).
std::int64_t epoch_day(std::int64_t epoch_seconds);

std::int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

}  // namespace spreadnet
