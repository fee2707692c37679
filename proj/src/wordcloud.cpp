#include "seeker/wordcloud.hpp"

#include <algorithm>
#include <map>

namespace seeker {

std::vector<CloudTerm> build_cloud(const std::vector<Article>& articles,
                                   const StopwordList& stopwords, std::size_t k) {
    std::map<std::string, std::size_t> counts;
    for (const auto& a : articles) {
        for (auto& t : content_terms(a.title + " " + a.abstract, stopwords)) ++counts[std::move(t)];
    }

    std::vector<CloudTerm> cloud;
    cloud.reserve(counts.size());
    for (auto& [term, count] : counts) cloud.push_back({term, count, 0.0});
    // std::map iteration is already lexicographic, so a stable sort on count keeps ties ordered.
    std::stable_sort(cloud.begin(), cloud.end(),
                     [](const CloudTerm& a, const CloudTerm& b) { return a.count > b.count; });
    if (cloud.size() > k) cloud.resize(k);
    if (!cloud.empty()) {
        const double max = static_cast<double>(cloud.front().count);
        for (auto& c : cloud) c.weight = static_cast<double>(c.count) / max;
    }
    return cloud;
}

nlohmann::json cloud_to_json(const std::vector<CloudTerm>& cloud) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : cloud) out.push_back({{"term", c.term}, {"count", c.count}, {"weight", c.weight}});
    return out;
}

}  // namespace seeker
