#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seeker/random.hpp"
#include "seeker/textproc.hpp"

namespace seeker {

struct UserProfile {
    std::string user_id;
    /// K_u: features accumulated from the user's likes and bookmarks.
    FeatureSet preference_features;
    /// Insertion order of K_u, oldest first. Drives eviction when K_u is capped.
    std::vector<std::string> preference_order;
    /// K_i: explicit requirement features.
    FeatureSet input_features;
    double w_p = 0.5;
    double w_i = 0.5;
    double threshold = 0.75;
    double explore_prob = 0.05;
    std::set<std::string> excluded_venues;
};

enum class DecisionReason { above_threshold, exploration, rejected, excluded_venue };

std::string_view to_string(DecisionReason reason) noexcept;

struct FilterDecision {
    double importance = 0.0;
    bool accepted = false;
    DecisionReason reason = DecisionReason::rejected;
};

/// Jaccard coefficient |a ∩ b| / |a ∪ b|, defined as 0 when both sets are empty.
double similarity(const FeatureSet& a, const FeatureSet& b) noexcept;

/// I = w_p * S(K_a, K_u) + w_i * S(K_a, K_i)
double importance(const FeatureSet& article_features, const UserProfile& profile) noexcept;

/// Venue exclusion short-circuits. Otherwise accept when I >= threshold, else draw
/// once from `rng` and accept as exploration when the draw is below explore_prob.
/// No draw is consumed for excluded or above-threshold articles.
FilterDecision decide(const FeatureSet& article_features, std::string_view venue,
                      const UserProfile& profile, UniformSource& rng);

/// decide() with the importance score already computed.
FilterDecision decide_scored(double importance, std::string_view venue, const UserProfile& profile,
                             UniformSource& rng);

/// Lowercase, trim, and collapse internal whitespace.
std::string normalize_venue(std::string_view venue);

/// Throws Error(invalid_profile) unless weights are non-negative and sum to 1, and
/// threshold / explore_prob lie in [0, 1].
void validate(const UserProfile& profile);

/// Sets both weights, rescaling them to sum to 1. Throws Error(invalid_weights) on a
/// negative, non-finite, or all-zero pair.
void set_weights(UserProfile& profile, double w_p, double w_i);

UserProfile make_profile(std::string user_id, double threshold = 0.75, double explore_prob = 0.05);

/// Adds a term to K_u as the newest entry, evicting the oldest beyond `cap`.
/// Re-adding an existing term moves it to the newest position.
void add_preference_term(UserProfile& profile, const std::string& term, std::size_t cap);

void to_json(nlohmann::json& j, const UserProfile& profile);
void from_json(const nlohmann::json& j, UserProfile& profile);

/// User ids double as file names, so they are restricted to [A-Za-z0-9._-] and may
/// not start with a dot.
bool is_valid_user_id(std::string_view user_id) noexcept;

/// Profiles persisted as one JSON object per user under `dir/<user_id>.json`.
class ProfileStore {
  public:
    explicit ProfileStore(std::filesystem::path dir);

    std::optional<UserProfile> load(const std::string& user_id) const;
    void save(const UserProfile& profile) const;
    const std::filesystem::path& dir() const noexcept { return dir_; }

  private:
    std::filesystem::path dir_;
};

}  // namespace seeker
