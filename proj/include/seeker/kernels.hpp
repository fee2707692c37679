#pragma once

// Data-parallel batch kernels. Each OpenMP kernel has a *_serial twin that computes the
// same thing with a plain loop; the tests hold the two to identical output and the
// benchmark compares their speed. Without OpenMP the parallel versions run serially.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seeker/article.hpp"
#include "seeker/error.hpp"
#include "seeker/metrics.hpp"
#include "seeker/probfilter.hpp"
#include "seeker/recommend.hpp"
#include "seeker/textproc.hpp"
#include "seeker/timeutil.hpp"

namespace seeker::kernels {

bool openmp_enabled() noexcept;
int max_threads() noexcept;

struct BuiltArticle {
    std::optional<Article> article;
    ErrorCode error = ErrorCode::invalid_request;  // meaningful when !article
    std::string message;
};

/// build_article over a batch; per-document failures are captured, not thrown.
std::vector<BuiltArticle> build_articles(std::span<const RawDocument> docs,
                                         const StopwordList& stopwords, Timestamp now);
std::vector<BuiltArticle> build_articles_serial(std::span<const RawDocument> docs,
                                                const StopwordList& stopwords, Timestamp now);

/// importance() for every feature set.
std::vector<double> importance_batch(std::span<const FeatureSet> features, const UserProfile& profile);
std::vector<double> importance_batch_serial(std::span<const FeatureSet> features,
                                            const UserProfile& profile);

/// cf_raw_score() for every candidate in the pool.
std::vector<double> cf_raw_scores(const ImplicitMatrix& m, const std::string& user,
                                  std::span<const std::string> pool);
std::vector<double> cf_raw_scores_serial(const ImplicitMatrix& m, const std::string& user,
                                         std::span<const std::string> pool);

/// score_pair() for candidate[i] against reference[i]. Spans must have equal length.
std::vector<EvalScores> score_pairs(std::span<const std::string> candidates,
                                    std::span<const std::string> references);
std::vector<EvalScores> score_pairs_serial(std::span<const std::string> candidates,
                                           std::span<const std::string> references);

/// Component-wise mean, accumulated in index order. Zero scores for an empty span.
EvalScores mean_scores(std::span<const EvalScores> scores);

}  // namespace seeker::kernels
