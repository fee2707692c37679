#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace seeker {

using Timestamp = std::chrono::sys_seconds;

Timestamp now_utc();

/// "2024-03-01T12:00:00Z"
std::string format_timestamp(Timestamp t);

/// Accepts "YYYY-MM-DDTHH:MM:SSZ" and a bare "YYYY-MM-DD". Throws Error(parse_error).
Timestamp parse_timestamp(std::string_view text);

int year_of(Timestamp t);

Timestamp make_timestamp(int year, int month, int day, int hour = 0, int minute = 0,
                         int second = 0);

}  // namespace seeker
