#include "seeker/searchidx.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>

#include "seeker/error.hpp"

namespace seeker {

SearchWeights SearchWeights::normalized() const {
    const double sum = relevance + recency + preference;
    const bool finite = std::isfinite(relevance) && std::isfinite(recency) && std::isfinite(preference);
    if (!finite || relevance < 0 || recency < 0 || preference < 0 || !(sum > 0)) {
        throw Error(ErrorCode::invalid_weights, "search weights must be non-negative with a positive sum");
    }
    return {relevance / sum, recency / sum, preference / sum};
}

double recency_score(int publication_year, Timestamp now) noexcept {
    const int age = std::max(0, year_of(now) - publication_year);
    return std::exp(-std::log(2.0) * static_cast<double>(age));
}

InvertedIndex::InvertedIndex(std::shared_ptr<const StopwordList> stopwords)
    : stopwords_(std::move(stopwords)) {}

void InvertedIndex::remove_locked(const std::string& webid) {
    auto it = docs_.find(webid);
    if (it == docs_.end()) return;
    std::vector<std::string> unique = it->second.terms;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto& term : unique) {
        auto p = postings_.find(term);
        if (p == postings_.end()) continue;
        auto& list = p->second;
        auto pos = std::lower_bound(list.begin(), list.end(), webid,
                                    [](const Posting& a, const std::string& w) { return a.webid < w; });
        if (pos != list.end() && pos->webid == webid) list.erase(pos);
        if (list.empty()) postings_.erase(p);
    }
    stats_.remove_document(it->second.terms);
    docs_.erase(it);
}

void InvertedIndex::index_article(const Article& article) {
    DocInfo doc;
    doc.terms = content_terms(article.title + " " + article.abstract, *stopwords_);
    doc.year = article.year;
    doc.features = article.features;

    std::map<std::string, std::uint32_t> tf;
    for (const auto& t : doc.terms) ++tf[t];

    std::unique_lock lock(mutex_);
    remove_locked(article.webid);
    for (const auto& [term, count] : tf) {
        auto& list = postings_[term];
        auto pos = std::lower_bound(list.begin(), list.end(), article.webid,
                                    [](const Posting& a, const std::string& w) { return a.webid < w; });
        list.insert(pos, Posting{article.webid, count});
    }
    stats_.add_document(doc.terms);
    docs_[article.webid] = std::move(doc);
}

bool InvertedIndex::remove(const std::string& webid) {
    std::unique_lock lock(mutex_);
    const bool present = docs_.contains(webid);
    remove_locked(webid);
    return present;
}

double InvertedIndex::bm25_locked(const FeatureSet& query_terms, const DocInfo& doc) const {
    const double n = static_cast<double>(stats_.document_count());
    const double avgdl = n > 0 ? static_cast<double>(stats_.total_terms()) / n : 0.0;
    const double dl = static_cast<double>(doc.terms.size());
    double score = 0.0;
    for (const auto& term : query_terms) {
        const auto tf = static_cast<double>(std::count(doc.terms.begin(), doc.terms.end(), term));
        if (tf == 0.0) continue;
        const double df = static_cast<double>(stats_.document_frequency(term));
        const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
        const double norm = avgdl > 0 ? dl / avgdl : 1.0;
        score += idf * tf * (kBm25K1 + 1.0) / (tf + kBm25K1 * (1.0 - kBm25B + kBm25B * norm));
    }
    return score;
}

std::map<std::string, double> InvertedIndex::candidate_scores_locked(const FeatureSet& query_terms) const {
    std::map<std::string, double> scores;
    for (const auto& term : query_terms) {
        auto p = postings_.find(term);
        if (p == postings_.end()) continue;
        for (const auto& posting : p->second) scores.emplace(posting.webid, 0.0);
    }
    for (auto& [webid, score] : scores) score = bm25_locked(query_terms, docs_.at(webid));
    return scores;
}

double InvertedIndex::bm25(const FeatureSet& query_terms, const std::string& webid) const {
    std::shared_lock lock(mutex_);
    auto it = docs_.find(webid);
    if (it == docs_.end()) throw Error(ErrorCode::not_indexed, "not indexed: " + webid);
    return bm25_locked(query_terms, it->second);
}

double InvertedIndex::relevance(const FeatureSet& query_terms, const std::string& webid) const {
    std::shared_lock lock(mutex_);
    if (!docs_.contains(webid)) throw Error(ErrorCode::not_indexed, "not indexed: " + webid);
    const auto scores = candidate_scores_locked(query_terms);
    double best = 0.0;
    for (const auto& [_, s] : scores) best = std::max(best, s);
    auto it = scores.find(webid);
    if (it == scores.end() || best <= 0.0) return 0.0;
    return it->second / best;
}

std::vector<RankedResult> InvertedIndex::search(std::string_view query, const UserProfile& profile,
                                                std::size_t k, Timestamp now,
                                                const SearchWeights& weights) const {
    if (k == 0) throw Error(ErrorCode::invalid_k, "k must be >= 1");
    const SearchWeights w = weights.normalized();
    const FeatureSet query_terms = extract_features(query, *stopwords_);

    std::shared_lock lock(mutex_);
    const auto scores = candidate_scores_locked(query_terms);
    double best = 0.0;
    for (const auto& [_, s] : scores) best = std::max(best, s);

    std::vector<RankedResult> results;
    results.reserve(scores.size());
    for (const auto& [webid, raw] : scores) {
        const DocInfo& doc = docs_.at(webid);
        RankedResult r;
        r.webid = webid;
        r.relevance = best > 0.0 ? raw / best : 0.0;
        r.recency = recency_score(doc.year, now);
        r.preference = similarity(doc.features, profile.preference_features);
        r.total = w.relevance * r.relevance + w.recency * r.recency + w.preference * r.preference;
        results.push_back(std::move(r));
    }
    lock.unlock();

    std::sort(results.begin(), results.end(), [](const RankedResult& a, const RankedResult& b) {
        if (a.total != b.total) return a.total > b.total;
        return a.webid < b.webid;
    });
    if (results.size() > k) results.resize(k);
    return results;
}

std::size_t InvertedIndex::document_count() const {
    std::shared_lock lock(mutex_);
    return docs_.size();
}

std::size_t InvertedIndex::posting_count() const {
    std::shared_lock lock(mutex_);
    std::size_t n = 0;
    for (const auto& [_, list] : postings_) n += list.size();
    return n;
}

std::vector<Posting> InvertedIndex::postings(const std::string& term) const {
    std::shared_lock lock(mutex_);
    auto it = postings_.find(term);
    return it == postings_.end() ? std::vector<Posting>{} : it->second;
}

TermStats InvertedIndex::stats() const {
    std::shared_lock lock(mutex_);
    return stats_;
}

void InvertedIndex::write_dump(const std::filesystem::path& path) const {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
        std::shared_lock lock(mutex_);
        for (const auto& [term, list] : postings_) {
            nlohmann::json entries = nlohmann::json::array();
            for (const auto& p : list) entries.push_back({p.webid, p.term_frequency});
            out << nlohmann::json{{"term", term}, {"postings", entries}}.dump() << '\n';
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace seeker
