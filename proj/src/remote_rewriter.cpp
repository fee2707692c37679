#include <httplib.h>

#include "seeker/error.hpp"
#include "seeker/http_util.hpp"
#include "seeker/rewrite.hpp"

namespace seeker {

RemoteRewriter::RemoteRewriter(RemoteConfig config, const LexiconRewriter& fallback)
    : config_(std::move(config)), fallback_(fallback) {}

namespace {

std::optional<std::vector<AcademicTerm>> call_remote(const RemoteConfig& cfg, const std::string& prompt) {
    if (cfg.url.empty()) return std::nullopt;
    UrlParts parts;
    try {
        parts = split_url(cfg.url);
    } catch (const Error&) {
        return std::nullopt;
    }
    httplib::Client client(parts.origin);
    const auto sec = std::chrono::duration_cast<std::chrono::seconds>(cfg.timeout);
    const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(cfg.timeout - sec);
    client.set_connection_timeout(sec.count(), usec.count());
    client.set_read_timeout(sec.count(), usec.count());
    client.set_write_timeout(sec.count(), usec.count());
    if (!cfg.bearer_token.empty()) client.set_bearer_token_auth(cfg.bearer_token);

    const nlohmann::json body = {{"prompt", prompt}, {"max_tokens", cfg.max_tokens}};
    auto res = client.Post(parts.path, body.dump(), "application/json");
    if (!res || res->status != 200) return std::nullopt;

    try {
        const auto j = nlohmann::json::parse(res->body);
        auto terms = parse_term_lines(j.at("text").get<std::string>());
        if (terms.empty()) return std::nullopt;
        return terms;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
}

}  // namespace

RewriteResult RemoteRewriter::rewrite(std::string_view query,
                                      const std::optional<std::string>& domain) const {
    std::string question(query);
    if (domain && !domain->empty()) question += " (domain: " + *domain + ")";

    std::optional<std::vector<AcademicTerm>> terms;
    try {
        terms = call_remote(config_, build_prompt(config_.system_role, config_.shots, question, config_.mode));
    } catch (const std::exception&) {
        terms.reset();
    }
    if (terms) {
        RewriteResult r;
        r.original = std::string(query);
        r.terms = std::move(*terms);
        r.backend = RewriteBackendKind::remote;
        return r;
    }
    RewriteResult degraded = fallback_.rewrite(query, domain);
    degraded.fallback_used = true;
    return degraded;
}

}  // namespace seeker
