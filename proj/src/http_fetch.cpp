#include <httplib.h>

#include "seeker/error.hpp"
#include "seeker/http_util.hpp"
#include "seeker/ingest.hpp"

namespace seeker {

UrlParts split_url(const std::string& url) {
    const std::string normalized = normalize_url(url);
    const auto sep = normalized.find("://");
    const auto path_start = normalized.find_first_of("/?", sep + 3);
    UrlParts parts;
    parts.origin = normalized.substr(0, path_start);
    parts.path = path_start == std::string::npos ? "/" : normalized.substr(path_start);
    if (parts.path.front() == '?') parts.path.insert(parts.path.begin(), '/');
    return parts;
}

RawDocument HttpFetcher::fetch(const std::string& url) const {
    const UrlParts parts = split_url(url);
    httplib::Client client(parts.origin);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_follow_location(true);

    auto res = client.Get(parts.path);
    if (!res) {
        throw Error(ErrorCode::fetch_error, url + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(ErrorCode::fetch_error, url + ": HTTP " + std::to_string(res->status));
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, url + ": " + e.what());
    }
    if (j.is_object() && !j.contains("url")) j["url"] = url;
    return parse_raw_document(j);
}

}  // namespace seeker
