#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "seeker/article.hpp"
#include "seeker/textproc.hpp"

namespace seeker {

struct CloudTerm {
    std::string term;
    std::size_t count = 0;
    double weight = 0.0;  // count / max count
};

inline constexpr std::size_t kDefaultCloudSize = 20;

/// Top-k content terms over title + abstract, counted with multiplicity. Sorted by count
/// descending, ties lexicographically ascending.
std::vector<CloudTerm> build_cloud(const std::vector<Article>& articles,
                                   const StopwordList& stopwords,
                                   std::size_t k = kDefaultCloudSize);

nlohmann::json cloud_to_json(const std::vector<CloudTerm>& cloud);

}  // namespace seeker
