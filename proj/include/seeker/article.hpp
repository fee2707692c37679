#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seeker/textproc.hpp"
#include "seeker/timeutil.hpp"

namespace seeker {

/// A document as it arrives from a corpus file, an HTTP fetch, or an API body.
struct RawDocument {
    std::string url;
    std::string title;
    std::string abstract;
    std::vector<std::string> authors;
    std::string venue;
    int year = 0;
};

/// Throws Error(invalid_request) naming the first missing or mistyped key.
RawDocument parse_raw_document(const nlohmann::json& j);
nlohmann::json raw_document_to_json(const RawDocument& doc);

/// Reads a JSON-lines corpus; blank lines are skipped. Throws Error(parse_error) with
/// the offending line number.
std::vector<RawDocument> load_corpus(const std::filesystem::path& path);

struct Article {
    std::string webid;
    std::string title;
    std::string abstract;
    std::vector<std::string> authors;
    std::string venue;
    int year = 0;
    std::string source_url;
    FeatureSet features;
    std::string content_hash;
    Timestamp fetched_at{};
    std::string summary;

    /// The deduplicated blob body: title + "\n" + abstract.
    std::string text() const { return title + "\n" + abstract; }
};

/// Full article view served by the API: metadata, text, features, summary.
nlohmann::json article_to_json(const Article& a);

}  // namespace seeker
