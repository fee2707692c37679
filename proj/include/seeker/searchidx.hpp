#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "seeker/article.hpp"
#include "seeker/probfilter.hpp"
#include "seeker/textproc.hpp"
#include "seeker/timeutil.hpp"

namespace seeker {

struct Posting {
    std::string webid;
    std::uint32_t term_frequency = 0;
};

/// Blend weights for the ranker. Normalized to sum to 1 before use.
struct SearchWeights {
    double relevance = 0.6;
    double recency = 0.2;
    double preference = 0.2;

    /// Throws Error(invalid_weights) on negative, non-finite, or all-zero weights.
    SearchWeights normalized() const;
};

struct RankedResult {
    std::string webid;
    double total = 0.0;
    double relevance = 0.0;
    double recency = 0.0;
    double preference = 0.0;
};

inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

/// exp(-ln2 * age) with age = max(0, year(now) - publication year): one-year half-life.
double recency_score(int publication_year, Timestamp now) noexcept;

/// Inverted index over title + abstract content terms with a BM25 / recency /
/// preference blend. Mutations are serialized; searches share a read lock so each
/// query sees one consistent snapshot.
class InvertedIndex {
  public:
    explicit InvertedIndex(std::shared_ptr<const StopwordList> stopwords);

    /// Re-indexing an existing webid replaces its postings.
    void index_article(const Article& article);
    bool remove(const std::string& webid);

    /// Raw BM25 of `webid` for the query terms. Throws Error(not_indexed).
    double bm25(const FeatureSet& query_terms, const std::string& webid) const;

    /// BM25 divided by the best BM25 among documents matching any query term.
    /// Throws Error(not_indexed).
    double relevance(const FeatureSet& query_terms, const std::string& webid) const;

    /// Throws Error(invalid_k) when k == 0.
    std::vector<RankedResult> search(std::string_view query, const UserProfile& profile,
                                     std::size_t k, Timestamp now,
                                     const SearchWeights& weights = {}) const;

    std::size_t document_count() const;
    std::size_t posting_count() const;
    std::vector<Posting> postings(const std::string& term) const;
    TermStats stats() const;

    /// JSON-lines dump: {"term": t, "postings": [[webid, tf], ...]} per line, terms in
    /// order. A cache only; the article metadata is the source of truth.
    void write_dump(const std::filesystem::path& path) const;

  private:
    struct DocInfo {
        std::vector<std::string> terms;
        int year = 0;
        FeatureSet features;
    };

    void remove_locked(const std::string& webid);
    double bm25_locked(const FeatureSet& query_terms, const DocInfo& doc) const;
    std::map<std::string, double> candidate_scores_locked(const FeatureSet& query_terms) const;

    std::shared_ptr<const StopwordList> stopwords_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::vector<Posting>> postings_;
    std::map<std::string, DocInfo> docs_;
    TermStats stats_;
};

}  // namespace seeker
