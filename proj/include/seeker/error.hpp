#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seeker {

enum class ErrorCode {
    invalid_url,
    invalid_year,
    invalid_k,
    invalid_weights,
    invalid_profile,
    invalid_request,
    insufficient_shots,
    empty_corpus,
    empty_input,
    not_indexed,
    not_found,
    io_error,
    parse_error,
    fetch_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is raised as this type. The code is
/// what the HTTP layer and CLI report; the message is for humans.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace seeker
