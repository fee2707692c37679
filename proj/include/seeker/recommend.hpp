#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seeker/article.hpp"
#include "seeker/probfilter.hpp"
#include "seeker/timeutil.hpp"

namespace seeker {

enum class InteractionKind { click, like, bookmark, read };

std::string_view to_string(InteractionKind kind) noexcept;
std::optional<InteractionKind> parse_interaction_kind(std::string_view text) noexcept;

struct Interaction {
    std::string user_id;
    std::string webid;
    InteractionKind kind = InteractionKind::click;
    Timestamp at{};
};

nlohmann::json interaction_to_json(const Interaction& i);
/// Throws Error(invalid_request).
Interaction interaction_from_json(const nlohmann::json& j);

/// Implicit rating per interaction kind; a (user, item) pair takes the max over its
/// interactions.
struct RatingWeights {
    int click = 1;
    int read = 2;
    int bookmark = 2;
    int like = 3;

    int of(InteractionKind kind) const noexcept;
};

class ImplicitMatrix {
  public:
    using Ratings = std::map<std::string, int>;

    static ImplicitMatrix from(std::span<const Interaction> interactions, const RatingWeights& w = {});

    /// Keeps the max of the existing and the new rating.
    void add(const std::string& user, const std::string& webid, int rating);

    int rating(const std::string& user, const std::string& webid) const;
    /// user -> rating for one item; empty when nobody rated it.
    const Ratings& item(const std::string& webid) const;
    /// webid -> rating for one user.
    const Ratings& user(const std::string& user_id) const;
    bool empty() const noexcept { return by_item_.empty(); }

  private:
    std::map<std::string, Ratings> by_item_;
    std::map<std::string, Ratings> by_user_;
};

/// Cosine similarity of the two items' user-rating vectors; 0 when either is all-zero.
double item_similarity(const ImplicitMatrix& m, const std::string& a, const std::string& b);

/// Sum over the user's rated items j of item_similarity(candidate, j) * rating(user, j).
double cf_raw_score(const ImplicitMatrix& m, const std::string& user, const std::string& candidate);

/// Raw cf scores for a pool, divided by the pool max (all zero when the max is zero).
std::vector<double> cf_scores(const ImplicitMatrix& m, const std::string& user,
                              std::span<const std::string> pool);

/// Interactions on each pool item within the closed window [now - window, now], divided
/// by the pool max (all zero when the max is zero).
std::vector<double> trending_scores(std::span<const Interaction> interactions,
                                    std::span<const std::string> pool, Timestamp now,
                                    std::chrono::seconds window = std::chrono::days(7));

struct BlendWeights {
    double cf = 0.5;
    double trending = 0.25;
    double recency = 0.25;

    /// Throws Error(invalid_weights) on negative, non-finite, or all-zero weights.
    BlendWeights normalized() const;
};

struct Recommendation {
    std::string webid;
    double score = 0.0;
    double cf = 0.0;
    double trending = 0.0;
    double recency = 0.0;
};

/// Pool: articles the user has not interacted with. score = cf*α + trending*β +
/// recency*γ, top k by score then webid. With no interactions anywhere the ranking is
/// recency alone. Throws Error(invalid_weights), Error(invalid_k) for k == 0.
std::vector<Recommendation> recommend(std::span<const Article> articles,
                                      std::span<const Interaction> interactions,
                                      const std::string& user, std::size_t k, Timestamp now,
                                      const BlendWeights& weights = {},
                                      const RatingWeights& ratings = {});

inline constexpr std::size_t kPreferenceCap = 200;

/// Likes and bookmarks fold the article's features into K_u (newest last, oldest
/// evicted past `cap`). Clicks and reads leave the profile untouched.
UserProfile update_preferences(UserProfile profile, const Article& article, InteractionKind kind,
                               std::size_t cap = kPreferenceCap);

/// Append-only JSON-lines interaction log. Appends are serialized and flushed before
/// returning; timestamps are clamped so the log never goes backwards.
class InteractionLog {
  public:
    InteractionLog() = default;
    explicit InteractionLog(std::filesystem::path path);

    Interaction append(Interaction interaction);
    std::vector<Interaction> snapshot() const;
    std::size_t size() const;

  private:
    mutable std::mutex mutex_;
    std::optional<std::filesystem::path> path_;
    std::vector<Interaction> entries_;
};

}  // namespace seeker
