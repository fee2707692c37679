#include "seeker/timeutil.hpp"

#include <cstdio>
#include <ctime>

#include "seeker/error.hpp"

namespace seeker {

Timestamp now_utc() {
    return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
}

std::string format_timestamp(Timestamp t) {
    const std::time_t raw = std::chrono::system_clock::to_time_t(t);
    std::tm parts{};
    gmtime_r(&raw, &parts);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", parts.tm_year + 1900,
                  parts.tm_mon + 1, parts.tm_mday, parts.tm_hour, parts.tm_min, parts.tm_sec);
    return buf;
}

Timestamp make_timestamp(int year, int month, int day, int hour, int minute, int second) {
    std::tm parts{};
    parts.tm_year = year - 1900;
    parts.tm_mon = month - 1;
    parts.tm_mday = day;
    parts.tm_hour = hour;
    parts.tm_min = minute;
    parts.tm_sec = second;
    return Timestamp{std::chrono::seconds{timegm(&parts)}};
}

Timestamp parse_timestamp(std::string_view text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    const std::string buf(text);
    char tail = 0;
    int consumed = 0;
    if (std::sscanf(buf.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c%n", &y, &mo, &d, &h, &mi, &s, &tail,
                    &consumed) == 7 &&
        tail == 'Z' && static_cast<std::size_t>(consumed) == buf.size()) {
        // full form
    } else if (std::sscanf(buf.c_str(), "%4d-%2d-%2d%n", &y, &mo, &d, &consumed) == 3 &&
               static_cast<std::size_t>(consumed) == buf.size()) {
        h = mi = s = 0;
    } else {
        throw Error(ErrorCode::parse_error, "bad timestamp: " + buf);
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) {
        throw Error(ErrorCode::parse_error, "timestamp out of range: " + buf);
    }
    return make_timestamp(y, mo, d, h, mi, s);
}

int year_of(Timestamp t) {
    const std::time_t raw = std::chrono::system_clock::to_time_t(t);
    std::tm parts{};
    gmtime_r(&raw, &parts);
    return parts.tm_year + 1900;
}

}  // namespace seeker
