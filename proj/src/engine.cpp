#include "seeker/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "seeker/error.hpp"
#include "seeker/summarize.hpp"
#include "seeker/wordcloud.hpp"

namespace seeker {

namespace {

constexpr std::size_t kFewShotCount = 3;

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::io_error, "data directory unusable: " + dir.string());
    }
    // Probe that the directory is readable.
    std::filesystem::directory_iterator probe(dir, ec);
    if (ec) throw Error(ErrorCode::io_error, "data directory unreadable: " + dir.string());
}

void require_user(const std::string& user_id) {
    if (!is_valid_user_id(user_id)) {
        throw Error(ErrorCode::invalid_profile, "invalid user id '" + user_id + "'");
    }
}

double number_field(const nlohmann::json& patch, const char* key) {
    const auto& v = patch.at(key);
    if (!v.is_number()) throw Error(ErrorCode::invalid_request, std::string(key) + " must be a number");
    return v.get<double>();
}

}  // namespace

Engine::Engine(Config config, Clock clock)
    : config_(std::move(config)), clock_(std::move(clock)), rng_(config_.seed) {
    ensure_directory(config_.data_dir);
    stopwords_ = std::make_shared<const StopwordList>(StopwordList::load(config_.stopwords_path));
    lexicon_ = LexiconRewriter::load(config_.lexicon_path);
    if (!config_.remote_url.empty()) rewriter_ = make_remote();

    store_ = std::make_unique<ArticleStore>(config_.data_dir);
    index_ = std::make_unique<InvertedIndex>(stopwords_);
    for (const auto& a : store_->all()) index_->index_article(a);
    log_ = std::make_unique<InteractionLog>(config_.data_dir / "interactions.jsonl");
    profiles_ = std::make_unique<ProfileStore>(config_.data_dir / "profiles");
}

std::unique_ptr<Rewriter> Engine::make_remote() const {
    RemoteConfig rc;
    rc.url = config_.remote_url;
    rc.timeout = config_.remote_timeout;
    rc.max_tokens = config_.remote_max_tokens;
    rc.bearer_token = config_.remote_token;
    rc.mode = config_.remote_mode;
    if (rc.mode != ShotMode::zero && std::filesystem::exists(config_.shots_path)) {
        auto shots = load_rewrite_pairs(config_.shots_path);
        if (shots.size() > kFewShotCount) shots.resize(kFewShotCount);
        rc.shots = std::move(shots);
    }
    return std::make_unique<RemoteRewriter>(std::move(rc), lexicon_);
}

const Rewriter& Engine::rewriter() const noexcept {
    if (rewriter_) return *rewriter_;
    return lexicon_;
}

IngestSink Engine::sink() { return IngestSink{*stopwords_, *store_, index_.get(), clock_()}; }

UserProfile Engine::load_profile(const std::string& user_id) const {
    require_user(user_id);
    if (auto p = profiles_->load(user_id)) return *p;
    return make_profile(user_id, config_.threshold, config_.explore_prob);
}

void Engine::save_profile(const UserProfile& profile) { profiles_->save(profile); }

void Engine::write_index_dump() const { index_->write_dump(config_.data_dir / "index.jsonl"); }

nlohmann::json Engine::health() const { return {{"status", "ok"}}; }

nlohmann::json Engine::search(const SearchRequest& request) const {
    const UserProfile profile = load_profile(request.user_id);
    std::string query = request.query;
    std::optional<RewriteResult> rewritten;
    if (request.rewrite) {
        rewritten = rewriter().rewrite(request.query, request.domain);
        for (const auto& t : rewritten->terms) query += " " + t.term;
    }
    if (normalize_query(query).empty()) throw Error(ErrorCode::empty_input, "query is empty");

    const auto ranked = index_->search(query, profile, request.k, clock_(), config_.search_weights);
    nlohmann::json results = nlohmann::json::array();
    std::vector<Article> hits;
    for (const auto& r : ranked) {
        auto article = store_->get(r.webid);
        nlohmann::json row = {{"webid", r.webid},
                              {"total", r.total},
                              {"relevance", r.relevance},
                              {"recency", r.recency},
                              {"preference", r.preference},
                              {"title", article ? article->title : ""},
                              {"summary", article ? article->summary : ""}};
        results.push_back(std::move(row));
        if (article) hits.push_back(std::move(*article));
    }
    nlohmann::json out = {{"results", results},
                          {"wordcloud", cloud_to_json(build_cloud(hits, *stopwords_))}};
    if (rewritten) out["rewrite"] = rewrite_result_to_json(*rewritten);
    return out;
}

nlohmann::json Engine::ingest(const std::string& user_id, const std::vector<RawDocument>& documents) {
    std::lock_guard lock(write_mutex_);
    const UserProfile profile = load_profile(user_id);
    IngestSink s = sink();
    const IngestReport report = ingest_batch(documents, profile, rng_, s);
    write_index_dump();
    return report_to_json(report);
}

nlohmann::json Engine::crawl(const std::string& user_id, const std::vector<std::string>& seeds,
                             std::optional<std::size_t> workers, const Fetcher& fetcher) {
    std::lock_guard lock(write_mutex_);
    const UserProfile profile = load_profile(user_id);
    IngestSink s = sink();
    CrawlOptions options;
    options.workers = workers.value_or(config_.crawl_workers);
    options.seed = config_.seed;
    const IngestReport report = seeker::crawl(seeds, profile, fetcher, s, options);
    write_index_dump();
    return report_to_json(report);
}

nlohmann::json Engine::crawl(const std::string& user_id, const std::vector<std::string>& seeds,
                             std::optional<std::size_t> workers) {
    const DefaultFetcher fetcher({}, config_.remote_timeout);
    return crawl(user_id, seeds, workers, fetcher);
}

nlohmann::json Engine::article(const std::string& webid) const {
    auto a = store_->get(webid);
    if (!a) throw Error(ErrorCode::not_found, "no article " + webid);
    return article_to_json(*a);
}

nlohmann::json Engine::add_interaction(const std::string& user_id, const std::string& webid,
                                       const std::string& kind) {
    require_user(user_id);
    const auto parsed = parse_interaction_kind(kind);
    if (!parsed) throw Error(ErrorCode::invalid_request, "unknown interaction kind '" + kind + "'");
    auto a = store_->get(webid);
    if (!a) throw Error(ErrorCode::not_found, "no article " + webid);

    std::lock_guard lock(write_mutex_);
    Interaction i{user_id, webid, *parsed, clock_()};
    i = log_->append(std::move(i));
    if (*parsed == InteractionKind::like || *parsed == InteractionKind::bookmark) {
        save_profile(update_preferences(load_profile(user_id), *a, *parsed));
    }
    return interaction_to_json(i);
}

nlohmann::json Engine::recommendations(const std::string& user_id, std::size_t k) const {
    require_user(user_id);
    const auto articles = store_->all();
    const auto interactions = log_->snapshot();
    const auto recs = recommend(articles, interactions, user_id, k, clock_(), config_.recommend_weights);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : recs) {
        auto a = store_->get(r.webid);
        out.push_back({{"webid", r.webid}, {"score", r.score}, {"title", a ? a->title : ""}});
    }
    return out;
}

nlohmann::json Engine::profile(const std::string& user_id) const { return load_profile(user_id); }

nlohmann::json Engine::update_profile(const std::string& user_id, const nlohmann::json& patch) {
    if (!patch.is_object()) throw Error(ErrorCode::invalid_request, "profile update must be an object");
    std::lock_guard lock(write_mutex_);
    UserProfile p = load_profile(user_id);

    const bool has_wp = patch.contains("w_p");
    const bool has_wi = patch.contains("w_i");
    if (has_wp && has_wi) {
        set_weights(p, number_field(patch, "w_p"), number_field(patch, "w_i"));
    } else if (has_wp || has_wi) {
        const double w = number_field(patch, has_wp ? "w_p" : "w_i");
        if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::invalid_weights, "weight must lie in [0, 1]");
        if (has_wp) set_weights(p, w, 1.0 - w);
        else set_weights(p, 1.0 - w, w);
    }
    if (patch.contains("threshold")) p.threshold = number_field(patch, "threshold");
    if (patch.contains("explore_prob")) p.explore_prob = number_field(patch, "explore_prob");
    if (patch.contains("excluded_venues")) {
        const auto& v = patch.at("excluded_venues");
        if (!v.is_array()) throw Error(ErrorCode::invalid_request, "excluded_venues must be an array");
        p.excluded_venues.clear();
        for (const auto& e : v) {
            if (!e.is_string()) throw Error(ErrorCode::invalid_request, "venues must be strings");
            const auto venue = normalize_venue(e.get<std::string>());
            if (!venue.empty()) p.excluded_venues.insert(venue);
        }
    }
    if (patch.contains("input_features")) {
        const auto& v = patch.at("input_features");
        std::string text;
        if (v.is_string()) {
            text = v.get<std::string>();
        } else if (v.is_array()) {
            for (const auto& e : v) {
                if (!e.is_string()) throw Error(ErrorCode::invalid_request, "input_features must be strings");
                text += e.get<std::string>() + " ";
            }
        } else {
            throw Error(ErrorCode::invalid_request, "input_features must be a string or an array");
        }
        p.input_features = extract_features(text, *stopwords_);
    }
    validate(p);
    save_profile(p);
    return p;
}

nlohmann::json Engine::rewrite(const std::string& query, const std::optional<std::string>& domain) const {
    if (normalize_query(query).empty()) throw Error(ErrorCode::empty_input, "query is empty");
    return rewrite_result_to_json(rewriter().rewrite(query, domain));
}

nlohmann::json Engine::summary(const std::string& webid) const {
    auto a = store_->get(webid);
    if (!a) throw Error(ErrorCode::not_found, "no article " + webid);
    const Summary s = summarize(a->abstract.empty() ? a->title : a->abstract, *stopwords_);
    return {{"webid", webid}, {"summary", s.text}, {"source_sentence_indices", s.source_sentence_indices}};
}

nlohmann::json Engine::evaluate_rewriter(const std::vector<RewritePair>& pairs,
                                         RewriteBackendKind backend) const {
    if (backend == RewriteBackendKind::lexicon) {
        return {{"backend", "lexicon"}, {"pairs", pairs.size()}, {"scores", eval_scores_to_json(evaluate(lexicon_, pairs))}};
    }
    const auto remote = make_remote();
    return {{"backend", "remote"}, {"pairs", pairs.size()}, {"scores", eval_scores_to_json(evaluate(*remote, pairs))}};
}

int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::not_found:
        case ErrorCode::not_indexed: return 404;
        case ErrorCode::io_error: return 500;
        case ErrorCode::fetch_error: return 502;
        default: return 400;
    }
}

nlohmann::json error_body(ErrorCode code, std::string_view message) {
    return {{"code", to_string(code)}, {"message", message}};
}

}  // namespace seeker
