#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seeker/article.hpp"
#include "seeker/probfilter.hpp"
#include "seeker/random.hpp"
#include "seeker/searchidx.hpp"
#include "seeker/store.hpp"

namespace seeker {

/// Lowercases scheme and host, drops the fragment and trailing slashes.
/// Throws Error(invalid_url) when there is no "scheme://" prefix or the url contains
/// whitespace.
std::string normalize_url(std::string_view url);

/// First 16 hex characters of SHA-256(normalize_url(url)).
std::string webid(std::string_view url);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Where accepted articles go. `index` may be null (store only).
struct IngestSink {
    const StopwordList& stopwords;
    ArticleStore& store;
    InvertedIndex* index = nullptr;
    Timestamp now = now_utc();
};

struct IngestOutcome {
    FilterDecision decision;
    std::optional<Article> article;
    bool deduplicated = false;
};

/// Builds the Article (webid, features, content hash, one-line summary) without
/// storing it. Throws Error(invalid_url) / Error(invalid_year).
Article build_article(const RawDocument& raw, const StopwordList& stopwords, Timestamp now);

/// Filters one document against `profile` and, when accepted, stores blob + pointer +
/// metadata and indexes it. Rejected documents leave no trace.
IngestOutcome ingest_one(const RawDocument& raw, const UserProfile& profile, UniformSource& rng,
                         IngestSink& sink);

struct IngestFailure {
    std::string url;
    std::string code;
    std::string message;
};

struct IngestReport {
    std::size_t fetched = 0;
    std::size_t accepted = 0;  // includes explored
    std::size_t rejected = 0;  // includes venue exclusions
    std::size_t explored = 0;
    std::size_t deduplicated = 0;
    std::size_t fetch_errors = 0;
    std::vector<IngestFailure> errors;
    /// webids stored by this run, sorted.
    std::vector<std::string> accepted_webids;

    void merge(const IngestReport& other);
};

nlohmann::json report_to_json(const IngestReport& report);

/// Sequential ingest of already-fetched documents. Invalid documents are counted as
/// errors and never abort the batch.
IngestReport ingest_batch(const std::vector<RawDocument>& docs, const UserProfile& profile,
                          UniformSource& rng, IngestSink& sink);

/// Turns a seed URL into a document. Implementations throw Error(fetch_error) or
/// Error(parse_error) on failure and must be safe to call from several threads.
class Fetcher {
  public:
    virtual ~Fetcher() = default;
    virtual RawDocument fetch(const std::string& url) const = 0;
};

/// Serves documents from an in-memory corpus keyed by normalized url.
class CorpusFetcher final : public Fetcher {
  public:
    explicit CorpusFetcher(const std::vector<RawDocument>& docs);
    RawDocument fetch(const std::string& url) const override;

  private:
    std::map<std::string, RawDocument> by_url_;
};

/// file:// urls: the file holds one JSON document object. The document's own "url"
/// key, when present, is kept as its source url.
class FileFetcher final : public Fetcher {
  public:
    RawDocument fetch(const std::string& url) const override;
};

/// http(s):// urls: GET returning one JSON document object.
class HttpFetcher final : public Fetcher {
  public:
    explicit HttpFetcher(std::chrono::milliseconds timeout = std::chrono::seconds(10))
        : timeout_(timeout) {}
    RawDocument fetch(const std::string& url) const override;

  private:
    std::chrono::milliseconds timeout_;
};

/// Corpus first (when given), then file:// and http(s):// adapters by scheme.
class DefaultFetcher final : public Fetcher {
  public:
    explicit DefaultFetcher(std::vector<RawDocument> corpus = {},
                            std::chrono::milliseconds timeout = std::chrono::seconds(10));
    RawDocument fetch(const std::string& url) const override;

  private:
    std::optional<CorpusFetcher> corpus_;
    FileFetcher file_;
    HttpFetcher http_;
};

struct CrawlOptions {
    std::size_t workers = 1;
    std::uint64_t seed = 42;
};

/// Worker pool over a shared seed queue. Worker i draws exploration decisions from its
/// own stream seeded by worker_seed(options.seed, i). Each seed is processed exactly
/// once; failures are recorded in the report. Throws Error(invalid_request) when
/// workers == 0.
IngestReport crawl(const std::vector<std::string>& seeds, const UserProfile& profile,
                   const Fetcher& fetcher, IngestSink& sink, const CrawlOptions& options);

}  // namespace seeker
