#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seeker/config.hpp"
#include "seeker/error.hpp"
#include "seeker/ingest.hpp"
#include "seeker/probfilter.hpp"
#include "seeker/recommend.hpp"
#include "seeker/rewrite.hpp"
#include "seeker/searchidx.hpp"
#include "seeker/store.hpp"

namespace seeker {

using Clock = std::function<Timestamp()>;

struct SearchRequest {
    std::string user_id;
    std::string query;
    std::size_t k = 10;
    bool rewrite = false;
    std::optional<std::string> domain;
};

/// Owns the persistent state under one data directory and produces the JSON payloads
/// shared by the HTTP API and the CLI's --json output.
///
/// Layout of data_dir:
///   blobs/, pointers.tsv, articles.jsonl   article store
///   interactions.jsonl                     interaction log
///   profiles/<user_id>.json                user profiles
///   index.jsonl                            index dump (rebuilt from articles)
class Engine {
  public:
    /// Loads persisted state. Throws Error(io_error) when data_dir cannot be created
    /// or read.
    explicit Engine(Config config, Clock clock = now_utc);

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    const Config& config() const noexcept { return config_; }
    Timestamp now() const { return clock_(); }

    nlohmann::json health() const;
    nlohmann::json search(const SearchRequest& request) const;
    nlohmann::json ingest(const std::string& user_id, const std::vector<RawDocument>& documents);
    nlohmann::json crawl(const std::string& user_id, const std::vector<std::string>& seeds,
                         std::optional<std::size_t> workers, const Fetcher& fetcher);
    nlohmann::json crawl(const std::string& user_id, const std::vector<std::string>& seeds,
                         std::optional<std::size_t> workers);
    nlohmann::json article(const std::string& webid) const;
    nlohmann::json add_interaction(const std::string& user_id, const std::string& webid,
                                   const std::string& kind);
    nlohmann::json recommendations(const std::string& user_id, std::size_t k) const;
    nlohmann::json profile(const std::string& user_id) const;
    /// Accepts any subset of w_p, w_i, threshold, explore_prob, excluded_venues,
    /// input_features (array of strings or free text).
    nlohmann::json update_profile(const std::string& user_id, const nlohmann::json& patch);
    nlohmann::json rewrite(const std::string& query, const std::optional<std::string>& domain) const;
    nlohmann::json summary(const std::string& webid) const;
    nlohmann::json evaluate_rewriter(const std::vector<RewritePair>& pairs, RewriteBackendKind backend) const;

    /// Stored profile, or a fresh one with the configured defaults. Throws
    /// Error(invalid_profile) for an invalid user id.
    UserProfile load_profile(const std::string& user_id) const;

    const ArticleStore& store() const noexcept { return *store_; }
    const InvertedIndex& index() const noexcept { return *index_; }
    const InteractionLog& interactions() const noexcept { return *log_; }
    const StopwordList& stopwords() const noexcept { return *stopwords_; }
    /// Remote backend when a url is configured, else the lexicon.
    const Rewriter& rewriter() const noexcept;

  private:
    IngestSink sink();
    void save_profile(const UserProfile& profile);
    void write_index_dump() const;
    std::unique_ptr<Rewriter> make_remote() const;

    Config config_;
    Clock clock_;
    std::shared_ptr<const StopwordList> stopwords_;
    std::unique_ptr<ArticleStore> store_;
    std::unique_ptr<InvertedIndex> index_;
    std::unique_ptr<InteractionLog> log_;
    std::unique_ptr<ProfileStore> profiles_;
    LexiconRewriter lexicon_;
    std::unique_ptr<Rewriter> rewriter_;
    // One writer at a time across ingest, crawl, interactions and profile updates.
    std::mutex write_mutex_;
    SeededUniform rng_;
};

/// HTTP status for an error code.
int http_status(ErrorCode code) noexcept;

nlohmann::json error_body(ErrorCode code, std::string_view message);

}  // namespace seeker
