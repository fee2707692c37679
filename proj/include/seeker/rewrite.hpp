#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seeker/metrics.hpp"

namespace seeker {

struct AcademicTerm {
    std::string term;
    std::string definition;

    friend bool operator==(const AcademicTerm&, const AcademicTerm&) = default;
};

struct RewritePair {
    std::string everyday;
    std::optional<std::string> domain;
    std::vector<AcademicTerm> academic_terms;
};

/// Throws Error(invalid_request) when the record breaks the pair invariants.
RewritePair parse_rewrite_pair(const nlohmann::json& j);
nlohmann::json rewrite_pair_to_json(const RewritePair& p);
std::vector<RewritePair> load_rewrite_pairs(const std::filesystem::path& path);

enum class RewriteBackendKind { lexicon, remote };

struct RewriteResult {
    std::string original;
    std::vector<AcademicTerm> terms;
    RewriteBackendKind backend = RewriteBackendKind::lexicon;
    bool fallback_used = false;
};

nlohmann::json rewrite_result_to_json(const RewriteResult& r);

/// Space-joined term strings; the original query when there are none (pass-through).
std::string candidate_text(const RewriteResult& r);

/// Lowercase, collapse whitespace, trim. Used for lexicon keys and domains.
std::string normalize_query(std::string_view text);

class Rewriter {
  public:
    virtual ~Rewriter() = default;
    /// Never throws; failures degrade to a pass-through result.
    virtual RewriteResult rewrite(std::string_view query,
                                  const std::optional<std::string>& domain) const = 0;
};

/// Exact lookup on (normalized query, domain), then the domain-free entry, then
/// pass-through with fallback_used = true.
class LexiconRewriter final : public Rewriter {
  public:
    LexiconRewriter() = default;

    /// TSV: everyday<TAB>domain<TAB>term<TAB>definition. An empty domain means "any".
    /// '#' lines are comments. Throws Error(parse_error) on a malformed line.
    static LexiconRewriter parse(std::string_view tsv);
    static LexiconRewriter load(const std::filesystem::path& path);
    /// One entry per pair term, keyed by the pair's domain and also domain-free.
    static LexiconRewriter from_pairs(const std::vector<RewritePair>& pairs);

    void add(std::string_view everyday, std::string_view domain, AcademicTerm term);
    std::size_t size() const noexcept { return entries_; }

    RewriteResult rewrite(std::string_view query,
                          const std::optional<std::string>& domain) const override;

  private:
    // (everyday, domain) -> terms; domain "" is the domain-free bucket.
    std::map<std::pair<std::string, std::string>, std::vector<AcademicTerm>> table_;
    std::size_t entries_ = 0;
};

enum class ShotMode { zero, one, few };

std::optional<ShotMode> parse_shot_mode(std::string_view text) noexcept;

/// System role, then "Q: <everyday>\nA: <term — definition>" blocks for the selected
/// shots (none, the first, or all), then "Q: <query>\nA:". Blocks are separated by a
/// blank line. Throws Error(insufficient_shots) for one-shot without a shot or
/// few-shot with fewer than two.
std::string build_prompt(std::string_view system_role, const std::vector<RewritePair>& shots,
                         std::string_view query, ShotMode mode);

inline constexpr std::string_view kDefaultSystemRole =
    "You translate everyday expressions into precise academic terminology. Answer with one "
    "line per term in the form \"term — definition\".";

/// Parses "term — definition" lines (em dash, en dash, or " - "). Lines without a
/// separator are skipped.
std::vector<AcademicTerm> parse_term_lines(std::string_view text);

struct RemoteConfig {
    std::string url;  // full endpoint, e.g. http://127.0.0.1:8081/v1/complete
    std::chrono::milliseconds timeout = std::chrono::seconds(10);
    int max_tokens = 256;
    std::string bearer_token;  // empty: no Authorization header
    std::string system_role = std::string(kDefaultSystemRole);
    std::vector<RewritePair> shots;
    ShotMode mode = ShotMode::zero;
};

/// POSTs {prompt, max_tokens} and parses {text}. Any failure (connect, timeout, status,
/// body, zero parsed terms) degrades to the lexicon with fallback_used = true.
class RemoteRewriter final : public Rewriter {
  public:
    RemoteRewriter(RemoteConfig config, const LexiconRewriter& fallback);

    RewriteResult rewrite(std::string_view query,
                          const std::optional<std::string>& domain) const override;

    const RemoteConfig& config() const noexcept { return config_; }

  private:
    RemoteConfig config_;
    const LexiconRewriter& fallback_;
};

/// Deterministic shuffle (mt19937_64 + Fisher-Yates), then the first
/// floor(n * train_fraction) pairs form the training set.
/// Throws Error(empty_corpus), Error(invalid_request) for a fraction outside (0, 1).
std::pair<std::vector<RewritePair>, std::vector<RewritePair>> split_corpus(
    std::vector<RewritePair> pairs, double train_fraction, std::uint64_t seed);

/// Reference text of a pair: its academic terms, space-joined.
std::string reference_text(const RewritePair& p);

/// Runs the rewriter on every everyday query and averages the per-pair scores of
/// candidate_text against reference_text. Throws Error(empty_corpus).
EvalScores evaluate(const Rewriter& rewriter, const std::vector<RewritePair>& validation);

nlohmann::json eval_scores_to_json(const EvalScores& s);

}  // namespace seeker
