#include "seeker/article.hpp"

#include <fstream>

#include "seeker/error.hpp"

namespace seeker {

namespace {

template <typename T>
T required(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorCode::invalid_request, std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::invalid_request, std::string("wrong type for key '") + key + "'");
    }
}

}  // namespace

RawDocument parse_raw_document(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorCode::invalid_request, "document must be a JSON object");
    RawDocument d;
    d.url = required<std::string>(j, "url");
    d.title = required<std::string>(j, "title");
    d.abstract = required<std::string>(j, "abstract");
    d.authors = required<std::vector<std::string>>(j, "authors");
    d.venue = required<std::string>(j, "venue");
    d.year = required<int>(j, "year");
    return d;
}

nlohmann::json raw_document_to_json(const RawDocument& d) {
    return {{"url", d.url},         {"title", d.title}, {"abstract", d.abstract},
            {"authors", d.authors}, {"venue", d.venue}, {"year", d.year}};
}

std::vector<RawDocument> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot read corpus " + path.string());
    std::vector<RawDocument> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            docs.push_back(parse_raw_document(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::parse_error,
                        path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(ErrorCode::parse_error,
                        path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return docs;
}

nlohmann::json article_to_json(const Article& a) {
    return {
        {"webid", a.webid},
        {"title", a.title},
        {"abstract", a.abstract},
        {"authors", a.authors},
        {"venue", a.venue},
        {"year", a.year},
        {"source_url", a.source_url},
        {"features", a.features.terms()},
        {"content_hash", a.content_hash},
        {"fetched_at", format_timestamp(a.fetched_at)},
        {"summary", a.summary},
    };
}

}  // namespace seeker
