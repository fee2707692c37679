#pragma once

#include <string>

namespace seeker {

struct UrlParts {
    std::string origin;  // scheme://host[:port]
    std::string path;    // always starts with '/'
};

/// Splits a normalized url for an HTTP client. Throws Error(invalid_url).
UrlParts split_url(const std::string& url);

}  // namespace seeker
