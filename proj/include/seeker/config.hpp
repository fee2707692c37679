#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "seeker/recommend.hpp"
#include "seeker/rewrite.hpp"
#include "seeker/searchidx.hpp"

#ifndef SEEKER_DEFAULT_DATA_DIR
#define SEEKER_DEFAULT_DATA_DIR "data"
#endif

namespace seeker {

/// Environment overrides honoured by both the server and the CLI.
inline constexpr const char* kEnvDataDir = "SEEKER_DATA_DIR";
inline constexpr const char* kEnvRewriteToken = "SEEKER_REWRITE_TOKEN";
inline constexpr const char* kEnvRewriteUrl = "SEEKER_REWRITE_URL";

struct Config {
    std::filesystem::path data_dir = "seeker-data";
    std::string host = "127.0.0.1";
    int port = 8080;

    SearchWeights search_weights;
    BlendWeights recommend_weights;
    double threshold = 0.75;
    double explore_prob = 0.05;
    std::size_t crawl_workers = 4;
    std::uint64_t seed = 42;

    std::string remote_url;  // empty: lexicon backend only
    std::chrono::milliseconds remote_timeout = std::chrono::seconds(10);
    int remote_max_tokens = 256;
    ShotMode remote_mode = ShotMode::few;
    std::string remote_token;

    std::filesystem::path stopwords_path = std::filesystem::path(SEEKER_DEFAULT_DATA_DIR) / "stopwords.txt";
    std::filesystem::path lexicon_path = std::filesystem::path(SEEKER_DEFAULT_DATA_DIR) / "lexicon.tsv";
    /// Few-shot examples for the remote backend; optional.
    std::filesystem::path shots_path = std::filesystem::path(SEEKER_DEFAULT_DATA_DIR) / "rewrite_pairs.jsonl";

    /// Reads a JSON config file; absent keys keep their defaults.
    static Config load(const std::filesystem::path& path);
    static Config from_json(const nlohmann::json& j);

    void apply_env();

    /// Normalizes weight groups and checks ranges and paths. Throws Error.
    void validate();
};

}  // namespace seeker
