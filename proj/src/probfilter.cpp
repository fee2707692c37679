#include "seeker/probfilter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "seeker/error.hpp"

namespace seeker {

std::string_view to_string(DecisionReason reason) noexcept {
    switch (reason) {
        case DecisionReason::above_threshold: return "above_threshold";
        case DecisionReason::exploration: return "exploration";
        case DecisionReason::rejected: return "rejected";
        case DecisionReason::excluded_venue: return "excluded_venue";
    }
    return "rejected";
}

double similarity(const FeatureSet& a, const FeatureSet& b) noexcept {
    const std::size_t common = intersection_size(a, b);
    const std::size_t unite = a.size() + b.size() - common;
    if (unite == 0) return 0.0;
    return static_cast<double>(common) / static_cast<double>(unite);
}

double importance(const FeatureSet& article_features, const UserProfile& profile) noexcept {
    return profile.w_p * similarity(article_features, profile.preference_features) +
           profile.w_i * similarity(article_features, profile.input_features);
}

std::string normalize_venue(std::string_view venue) {
    std::string out;
    bool pending_space = false;
    for (char c : venue) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c;
    }
    return out;
}

FilterDecision decide(const FeatureSet& article_features, std::string_view venue,
                      const UserProfile& profile, UniformSource& rng) {
    return decide_scored(importance(article_features, profile), venue, profile, rng);
}

FilterDecision decide_scored(double importance, std::string_view venue, const UserProfile& profile,
                             UniformSource& rng) {
    FilterDecision d;
    d.importance = importance;
    if (!profile.excluded_venues.empty() &&
        profile.excluded_venues.contains(normalize_venue(venue))) {
        d.accepted = false;
        d.reason = DecisionReason::excluded_venue;
        return d;
    }
    if (d.importance >= profile.threshold) {
        d.accepted = true;
        d.reason = DecisionReason::above_threshold;
        return d;
    }
    const double u = rng.next();
    d.accepted = u < profile.explore_prob;
    d.reason = d.accepted ? DecisionReason::exploration : DecisionReason::rejected;
    return d;
}

namespace {

bool unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

void validate(const UserProfile& p) {
    if (!is_valid_user_id(p.user_id)) {
        throw Error(ErrorCode::invalid_profile, "invalid user id '" + p.user_id + "'");
    }
    if (!unit_interval(p.w_p) || !unit_interval(p.w_i) || std::abs(p.w_p + p.w_i - 1.0) > 1e-9) {
        throw Error(ErrorCode::invalid_profile, "w_p and w_i must be non-negative and sum to 1");
    }
    if (!unit_interval(p.threshold)) {
        throw Error(ErrorCode::invalid_profile, "threshold must lie in [0, 1]");
    }
    if (!unit_interval(p.explore_prob)) {
        throw Error(ErrorCode::invalid_profile, "explore_prob must lie in [0, 1]");
    }
}

void set_weights(UserProfile& profile, double w_p, double w_i) {
    if (!std::isfinite(w_p) || !std::isfinite(w_i) || w_p < 0.0 || w_i < 0.0 || w_p + w_i <= 0.0) {
        throw Error(ErrorCode::invalid_weights, "weights must be finite, non-negative, not both zero");
    }
    const double total = w_p + w_i;
    profile.w_p = w_p / total;
    profile.w_i = 1.0 - profile.w_p;
}

UserProfile make_profile(std::string user_id, double threshold, double explore_prob) {
    UserProfile p;
    p.user_id = std::move(user_id);
    p.threshold = threshold;
    p.explore_prob = explore_prob;
    return p;
}

void add_preference_term(UserProfile& profile, const std::string& term, std::size_t cap) {
    auto& order = profile.preference_order;
    if (auto it = std::find(order.begin(), order.end(), term); it != order.end()) {
        order.erase(it);
    }
    order.push_back(term);
    profile.preference_features.insert(term);
    while (order.size() > cap) {
        profile.preference_features.erase(order.front());
        order.erase(order.begin());
    }
}

bool is_valid_user_id(std::string_view id) noexcept {
    if (id.empty() || id.size() > 128 || id.front() == '.') return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-' || c == '.';
    });
}

// K_u is written in insertion order so eviction order survives a reload.
void to_json(nlohmann::json& j, const UserProfile& p) {
    j = nlohmann::json{
        {"user_id", p.user_id},
        {"preference_features", p.preference_order},
        {"input_features", p.input_features.terms()},
        {"w_p", p.w_p},
        {"w_i", p.w_i},
        {"threshold", p.threshold},
        {"explore_prob", p.explore_prob},
        {"excluded_venues", p.excluded_venues},
    };
}

void from_json(const nlohmann::json& j, UserProfile& p) {
    p = UserProfile{};
    j.at("user_id").get_to(p.user_id);
    p.preference_order.clear();
    for (const auto& t : j.value("preference_features", nlohmann::json::array())) {
        add_preference_term(p, t.get<std::string>(), static_cast<std::size_t>(-1));
    }
    p.input_features = FeatureSet(j.value("input_features", std::vector<std::string>{}));
    p.w_p = j.value("w_p", 0.5);
    p.w_i = j.value("w_i", 0.5);
    p.threshold = j.value("threshold", 0.75);
    p.explore_prob = j.value("explore_prob", 0.05);
    for (const auto& v : j.value("excluded_venues", std::vector<std::string>{})) {
        p.excluded_venues.insert(normalize_venue(v));
    }
}

ProfileStore::ProfileStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::optional<UserProfile> ProfileStore::load(const std::string& user_id) const {
    if (!is_valid_user_id(user_id)) return std::nullopt;
    std::ifstream in(dir_ / (user_id + ".json"));
    if (!in) return std::nullopt;
    try {
        return nlohmann::json::parse(in).get<UserProfile>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, "corrupt profile for " + user_id + ": " + e.what());
    }
}

void ProfileStore::save(const UserProfile& profile) const {
    validate(profile);
    const auto target = dir_ / (profile.user_id + ".json");
    const auto tmp = dir_ / (profile.user_id + ".json.tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
        out << nlohmann::json(profile).dump(2) << '\n';
        out.flush();
        if (!out) throw Error(ErrorCode::io_error, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace seeker
