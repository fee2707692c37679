#include "seeker/config.hpp"

#include <cstdlib>
#include <fstream>

#include "seeker/error.hpp"

namespace seeker {

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot read config " + path.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
    }
}

Config Config::from_json(const nlohmann::json& j) {
    Config c;
    c.data_dir = j.value("data_dir", c.data_dir.string());
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    if (j.contains("search_weights")) {
        const auto& w = j.at("search_weights");
        c.search_weights = {w.value("relevance", c.search_weights.relevance),
                            w.value("recency", c.search_weights.recency),
                            w.value("preference", c.search_weights.preference)};
    }
    if (j.contains("recommend_weights")) {
        const auto& w = j.at("recommend_weights");
        c.recommend_weights = {w.value("cf", c.recommend_weights.cf),
                               w.value("trending", c.recommend_weights.trending),
                               w.value("recency", c.recommend_weights.recency)};
    }
    c.threshold = j.value("threshold", c.threshold);
    c.explore_prob = j.value("explore_prob", c.explore_prob);
    c.crawl_workers = j.value("crawl_workers", c.crawl_workers);
    c.seed = j.value("seed", c.seed);
    if (j.contains("remote_rewrite")) {
        const auto& r = j.at("remote_rewrite");
        c.remote_url = r.value("url", c.remote_url);
        c.remote_timeout = std::chrono::milliseconds(r.value("timeout_ms", c.remote_timeout.count()));
        c.remote_max_tokens = r.value("max_tokens", c.remote_max_tokens);
        if (auto mode = parse_shot_mode(r.value("mode", std::string("few")))) c.remote_mode = *mode;
    }
    c.stopwords_path = j.value("stopwords_path", c.stopwords_path.string());
    c.lexicon_path = j.value("lexicon_path", c.lexicon_path.string());
    c.shots_path = j.value("shots_path", c.shots_path.string());
    return c;
}

void Config::apply_env() {
    if (const char* dir = std::getenv(kEnvDataDir); dir != nullptr && *dir != '\0') data_dir = dir;
    if (const char* token = std::getenv(kEnvRewriteToken); token != nullptr) remote_token = token;
    if (const char* url = std::getenv(kEnvRewriteUrl); url != nullptr && *url != '\0') remote_url = url;
}

void Config::validate() {
    search_weights = search_weights.normalized();
    recommend_weights = recommend_weights.normalized();
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw Error(ErrorCode::invalid_request, "threshold must lie in [0, 1]");
    }
    if (!(explore_prob >= 0.0 && explore_prob <= 1.0)) {
        throw Error(ErrorCode::invalid_request, "explore_prob must lie in [0, 1]");
    }
    if (port < 0 || port > 65535) throw Error(ErrorCode::invalid_request, "port out of range");
    if (crawl_workers == 0) throw Error(ErrorCode::invalid_request, "crawl_workers must be >= 1");
    if (!std::filesystem::exists(stopwords_path)) {
        throw Error(ErrorCode::io_error, "stopword file not found: " + stopwords_path.string());
    }
    if (!std::filesystem::exists(lexicon_path)) {
        throw Error(ErrorCode::io_error, "lexicon not found: " + lexicon_path.string());
    }
}

}  // namespace seeker
