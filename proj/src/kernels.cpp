#include "seeker/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstddef>

#include "seeker/ingest.hpp"

namespace seeker::kernels {

bool openmp_enabled() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

BuiltArticle build_one(const RawDocument& doc, const StopwordList& stopwords, Timestamp now) {
    BuiltArticle out;
    try {
        out.article = build_article(doc, stopwords, now);
    } catch (const Error& e) {
        out.error = e.code();
        out.message = e.what();
    } catch (const std::exception& e) {
        out.error = ErrorCode::invalid_request;
        out.message = e.what();
    }
    return out;
}

// OpenMP loop indices are signed.
std::ptrdiff_t ssize(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

}  // namespace

std::vector<BuiltArticle> build_articles(std::span<const RawDocument> docs,
                                         const StopwordList& stopwords, Timestamp now) {
    std::vector<BuiltArticle> out(docs.size());
    const std::ptrdiff_t n = ssize(docs.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = build_one(docs[static_cast<std::size_t>(i)], stopwords, now);
    }
    return out;
}

std::vector<BuiltArticle> build_articles_serial(std::span<const RawDocument> docs,
                                                const StopwordList& stopwords, Timestamp now) {
    std::vector<BuiltArticle> out;
    out.reserve(docs.size());
    for (const auto& d : docs) out.push_back(build_one(d, stopwords, now));
    return out;
}

std::vector<double> importance_batch(std::span<const FeatureSet> features, const UserProfile& profile) {
    std::vector<double> out(features.size());
    const std::ptrdiff_t n = ssize(features.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = importance(features[static_cast<std::size_t>(i)], profile);
    }
    return out;
}

std::vector<double> importance_batch_serial(std::span<const FeatureSet> features,
                                            const UserProfile& profile) {
    std::vector<double> out;
    out.reserve(features.size());
    for (const auto& f : features) out.push_back(importance(f, profile));
    return out;
}

std::vector<double> cf_raw_scores(const ImplicitMatrix& m, const std::string& user,
                                  std::span<const std::string> pool) {
    std::vector<double> out(pool.size());
    const std::ptrdiff_t n = ssize(pool.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = cf_raw_score(m, user, pool[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::vector<double> cf_raw_scores_serial(const ImplicitMatrix& m, const std::string& user,
                                         std::span<const std::string> pool) {
    std::vector<double> out;
    out.reserve(pool.size());
    for (const auto& c : pool) out.push_back(cf_raw_score(m, user, c));
    return out;
}

std::vector<EvalScores> score_pairs(std::span<const std::string> candidates,
                                    std::span<const std::string> references) {
    std::vector<EvalScores> out(candidates.size());
    const std::ptrdiff_t n = ssize(std::min(candidates.size(), references.size()));
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = score_pair(candidates[k], references[k]);
    }
    return out;
}

std::vector<EvalScores> score_pairs_serial(std::span<const std::string> candidates,
                                           std::span<const std::string> references) {
    std::vector<EvalScores> out(candidates.size());
    for (std::size_t i = 0; i < std::min(candidates.size(), references.size()); ++i) {
        out[i] = score_pair(candidates[i], references[i]);
    }
    return out;
}

EvalScores mean_scores(std::span<const EvalScores> scores) {
    EvalScores total;
    if (scores.empty()) return total;
    for (const auto& s : scores) total += s;
    total /= static_cast<double>(scores.size());
    return total;
}

}  // namespace seeker::kernels
