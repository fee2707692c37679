#include "seeker/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "seeker/error.hpp"
#include "seeker/kernels.hpp"
#include "seeker/searchidx.hpp"

namespace seeker {

std::string_view to_string(InteractionKind kind) noexcept {
    switch (kind) {
        case InteractionKind::click: return "click";
        case InteractionKind::like: return "like";
        case InteractionKind::bookmark: return "bookmark";
        case InteractionKind::read: return "read";
    }
    return "click";
}

std::optional<InteractionKind> parse_interaction_kind(std::string_view text) noexcept {
    if (text == "click") return InteractionKind::click;
    if (text == "like") return InteractionKind::like;
    if (text == "bookmark") return InteractionKind::bookmark;
    if (text == "read") return InteractionKind::read;
    return std::nullopt;
}

nlohmann::json interaction_to_json(const Interaction& i) {
    return {{"user_id", i.user_id},
            {"webid", i.webid},
            {"kind", to_string(i.kind)},
            {"at", format_timestamp(i.at)}};
}

Interaction interaction_from_json(const nlohmann::json& j) {
    Interaction i;
    try {
        i.user_id = j.at("user_id").get<std::string>();
        i.webid = j.at("webid").get<std::string>();
        const auto kind = parse_interaction_kind(j.at("kind").get<std::string>());
        if (!kind) throw Error(ErrorCode::invalid_request, "unknown interaction kind");
        i.kind = *kind;
        i.at = j.contains("at") ? parse_timestamp(j.at("at").get<std::string>()) : Timestamp{};
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_request, std::string("bad interaction: ") + e.what());
    } catch (const Error& e) {
        throw Error(ErrorCode::invalid_request, std::string("bad interaction: ") + e.what());
    }
    return i;
}

int RatingWeights::of(InteractionKind kind) const noexcept {
    switch (kind) {
        case InteractionKind::click: return click;
        case InteractionKind::read: return read;
        case InteractionKind::bookmark: return bookmark;
        case InteractionKind::like: return like;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Implicit matrix

ImplicitMatrix ImplicitMatrix::from(std::span<const Interaction> interactions, const RatingWeights& w) {
    ImplicitMatrix m;
    for (const auto& i : interactions) m.add(i.user_id, i.webid, w.of(i.kind));
    return m;
}

void ImplicitMatrix::add(const std::string& user, const std::string& webid, int rating) {
    if (rating <= 0) return;
    int& by_item = by_item_[webid][user];
    by_item = std::max(by_item, rating);
    by_user_[user][webid] = by_item;
}

int ImplicitMatrix::rating(const std::string& user, const std::string& webid) const {
    auto it = by_user_.find(user);
    if (it == by_user_.end()) return 0;
    auto r = it->second.find(webid);
    return r == it->second.end() ? 0 : r->second;
}

const ImplicitMatrix::Ratings& ImplicitMatrix::item(const std::string& webid) const {
    static const Ratings kEmpty;
    auto it = by_item_.find(webid);
    return it == by_item_.end() ? kEmpty : it->second;
}

const ImplicitMatrix::Ratings& ImplicitMatrix::user(const std::string& user_id) const {
    static const Ratings kEmpty;
    auto it = by_user_.find(user_id);
    return it == by_user_.end() ? kEmpty : it->second;
}

double item_similarity(const ImplicitMatrix& m, const std::string& a, const std::string& b) {
    const auto& va = m.item(a);
    const auto& vb = m.item(b);
    if (va.empty() || vb.empty()) return 0.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [_, r] : va) na += static_cast<double>(r) * r;
    for (const auto& [_, r] : vb) nb += static_cast<double>(r) * r;
    // Merge over the two sorted user maps.
    auto i = va.begin();
    auto j = vb.begin();
    while (i != va.end() && j != vb.end()) {
        if (i->first == j->first) {
            dot += static_cast<double>(i->second) * j->second;
            ++i;
            ++j;
        } else if (i->first < j->first) {
            ++i;
        } else {
            ++j;
        }
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::min(1.0, dot / (std::sqrt(na) * std::sqrt(nb)));
}

double cf_raw_score(const ImplicitMatrix& m, const std::string& user, const std::string& candidate) {
    double score = 0.0;
    for (const auto& [item, rating] : m.user(user)) {
        if (item == candidate) continue;
        score += item_similarity(m, candidate, item) * rating;
    }
    return score;
}

namespace {

void normalize_by_max(std::vector<double>& v) {
    const double max = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    for (double& x : v) x = max > 0.0 ? x / max : 0.0;
}

}  // namespace

std::vector<double> cf_scores(const ImplicitMatrix& m, const std::string& user,
                              std::span<const std::string> pool) {
    auto scores = kernels::cf_raw_scores(m, user, pool);
    normalize_by_max(scores);
    return scores;
}

std::vector<double> trending_scores(std::span<const Interaction> interactions,
                                    std::span<const std::string> pool, Timestamp now,
                                    std::chrono::seconds window) {
    const Timestamp from = now - window;
    std::map<std::string, double> counts;
    for (const auto& i : interactions) {
        if (i.at >= from && i.at <= now) counts[i.webid] += 1.0;
    }
    std::vector<double> out;
    out.reserve(pool.size());
    for (const auto& webid : pool) {
        auto it = counts.find(webid);
        out.push_back(it == counts.end() ? 0.0 : it->second);
    }
    normalize_by_max(out);
    return out;
}

BlendWeights BlendWeights::normalized() const {
    const double sum = cf + trending + recency;
    const bool finite = std::isfinite(cf) && std::isfinite(trending) && std::isfinite(recency);
    if (!finite || cf < 0 || trending < 0 || recency < 0 || !(sum > 0)) {
        throw Error(ErrorCode::invalid_weights,
                    "recommender weights must be non-negative with a positive sum");
    }
    return {cf / sum, trending / sum, recency / sum};
}

std::vector<Recommendation> recommend(std::span<const Article> articles,
                                      std::span<const Interaction> interactions,
                                      const std::string& user, std::size_t k, Timestamp now,
                                      const BlendWeights& weights, const RatingWeights& ratings) {
    const BlendWeights w = weights.normalized();
    if (k == 0) throw Error(ErrorCode::invalid_k, "k must be >= 1");

    std::set<std::string> touched;
    for (const auto& i : interactions) {
        if (i.user_id == user) touched.insert(i.webid);
    }
    std::vector<std::string> pool;
    std::vector<int> years;
    for (const auto& a : articles) {
        if (touched.contains(a.webid)) continue;
        pool.push_back(a.webid);
        years.push_back(a.year);
    }
    if (pool.empty()) return {};

    const bool cold = interactions.empty();
    const ImplicitMatrix m = ImplicitMatrix::from(interactions, ratings);
    const auto cf = cold ? std::vector<double>(pool.size(), 0.0) : cf_scores(m, user, pool);
    const auto trend = trending_scores(interactions, pool, now);

    std::vector<Recommendation> out;
    out.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        Recommendation r;
        r.webid = pool[i];
        r.cf = cf[i];
        r.trending = trend[i];
        r.recency = recency_score(years[i], now);
        r.score = cold ? r.recency : w.cf * r.cf + w.trending * r.trending + w.recency * r.recency;
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.webid < b.webid;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

UserProfile update_preferences(UserProfile profile, const Article& article, InteractionKind kind,
                               std::size_t cap) {
    if (kind != InteractionKind::like && kind != InteractionKind::bookmark) return profile;
    for (const auto& term : article.features) add_preference_term(profile, term, cap);
    return profile;
}

// ---------------------------------------------------------------------------
// Log

InteractionLog::InteractionLog(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(*path_);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            entries_.push_back(interaction_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw Error(ErrorCode::parse_error, path_->string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

Interaction InteractionLog::append(Interaction interaction) {
    std::lock_guard lock(mutex_);
    if (!entries_.empty() && interaction.at < entries_.back().at) interaction.at = entries_.back().at;
    if (path_) {
        std::ofstream out(*path_, std::ios::app);
        if (!out) throw Error(ErrorCode::io_error, "cannot append to " + path_->string());
        out << interaction_to_json(interaction).dump() << '\n';
        out.flush();
        if (!out) throw Error(ErrorCode::io_error, "write failed for " + path_->string());
    }
    entries_.push_back(interaction);
    return interaction;
}

std::vector<Interaction> InteractionLog::snapshot() const {
    std::lock_guard lock(mutex_);
    return entries_;
}

std::size_t InteractionLog::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

}  // namespace seeker
