#include "seeker/error.hpp"

namespace seeker {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_url: return "invalid_url";
        case ErrorCode::invalid_year: return "invalid_year";
        case ErrorCode::invalid_k: return "invalid_k";
        case ErrorCode::invalid_weights: return "invalid_weights";
        case ErrorCode::invalid_profile: return "invalid_profile";
        case ErrorCode::invalid_request: return "invalid_request";
        case ErrorCode::insufficient_shots: return "insufficient_shots";
        case ErrorCode::empty_corpus: return "empty_corpus";
        case ErrorCode::empty_input: return "empty_input";
        case ErrorCode::not_indexed: return "not_indexed";
        case ErrorCode::not_found: return "not_found";
        case ErrorCode::io_error: return "io_error";
        case ErrorCode::parse_error: return "parse_error";
        case ErrorCode::fetch_error: return "fetch_error";
    }
    return "unknown";
}

}  // namespace seeker
