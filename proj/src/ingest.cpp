#include "seeker/ingest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "seeker/error.hpp"
#include "seeker/kernels.hpp"
#include "seeker/summarize.hpp"

namespace seeker {

namespace {

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

bool scheme_char(char c, bool first) {
    const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (first) return alpha;
    return alpha || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

}  // namespace

std::string normalize_url(std::string_view url) {
    if (url.empty()) throw Error(ErrorCode::invalid_url, "empty url");
    for (char c : url) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            throw Error(ErrorCode::invalid_url, "url contains whitespace: " + std::string(url));
        }
    }
    const auto sep = url.find("://");
    if (sep == std::string_view::npos || sep == 0) {
        throw Error(ErrorCode::invalid_url, "url has no scheme: " + std::string(url));
    }
    for (std::size_t i = 0; i < sep; ++i) {
        if (!scheme_char(url[i], i == 0)) {
            throw Error(ErrorCode::invalid_url, "malformed scheme: " + std::string(url));
        }
    }

    std::string_view rest = url.substr(sep + 3);
    if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    const auto host_end = rest.find_first_of("/?");
    std::string_view host = rest.substr(0, host_end);
    std::string_view tail = host_end == std::string_view::npos ? std::string_view{} : rest.substr(host_end);

    std::string out;
    out.reserve(url.size());
    for (std::size_t i = 0; i < sep; ++i) out += lower(url[i]);
    out += "://";
    for (char c : host) out += lower(c);
    out += tail;
    const std::size_t floor = sep + 3;
    while (out.size() > floor && out.back() == '/') out.pop_back();
    if (host.empty() && out.size() == floor && out.substr(0, sep) != "file") {
        throw Error(ErrorCode::invalid_url, "url has no host: " + std::string(url));
    }
    return out;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::io_error, "SHA-256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0x0f];
    }
    return out;
}

std::string webid(std::string_view url) { return sha256_hex(normalize_url(url)).substr(0, 16); }

Article build_article(const RawDocument& raw, const StopwordList& stopwords, Timestamp now) {
    const int max_year = year_of(now) + 1;
    if (raw.year < 1900 || raw.year > max_year) {
        throw Error(ErrorCode::invalid_year, "year " + std::to_string(raw.year) +
                                                 " outside 1900.." + std::to_string(max_year));
    }
    Article a;
    a.source_url = normalize_url(raw.url);
    a.webid = sha256_hex(a.source_url).substr(0, 16);
    a.title = raw.title;
    // The blob is "title\nabstract"; a newline inside the title would move the split.
    std::replace(a.title.begin(), a.title.end(), '\n', ' ');
    std::replace(a.title.begin(), a.title.end(), '\r', ' ');
    a.abstract = raw.abstract;
    a.authors = raw.authors;
    a.venue = raw.venue;
    a.year = raw.year;
    a.features = extract_features(a.title + " " + a.abstract, stopwords);
    a.content_hash = sha256_hex(a.text());
    a.fetched_at = now;
    const std::string& source = a.abstract.empty() ? a.title : a.abstract;
    try {
        a.summary = summarize(source, stopwords, 1).text;
    } catch (const Error&) {
        a.summary.clear();
    }
    return a;
}

namespace {

IngestOutcome store_decided(Article article, FilterDecision decision, IngestSink& sink) {
    IngestOutcome out;
    out.decision = decision;
    if (!out.decision.accepted) return out;

    const auto result = sink.store.put(article);
    out.deduplicated = result != ArticleStore::PutResult::stored;
    if (sink.index != nullptr) sink.index->index_article(article);
    out.article = std::move(article);
    return out;
}

}  // namespace

IngestOutcome ingest_one(const RawDocument& raw, const UserProfile& profile, UniformSource& rng,
                         IngestSink& sink) {
    Article article = build_article(raw, sink.stopwords, sink.now);
    const FilterDecision decision = decide(article.features, article.venue, profile, rng);
    return store_decided(std::move(article), decision, sink);
}

// ---------------------------------------------------------------------------
// Reports

void IngestReport::merge(const IngestReport& other) {
    fetched += other.fetched;
    accepted += other.accepted;
    rejected += other.rejected;
    explored += other.explored;
    deduplicated += other.deduplicated;
    fetch_errors += other.fetch_errors;
    errors.insert(errors.end(), other.errors.begin(), other.errors.end());
    accepted_webids.insert(accepted_webids.end(), other.accepted_webids.begin(),
                           other.accepted_webids.end());
    std::sort(accepted_webids.begin(), accepted_webids.end());
    accepted_webids.erase(std::unique(accepted_webids.begin(), accepted_webids.end()),
                          accepted_webids.end());
}

nlohmann::json report_to_json(const IngestReport& r) {
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& e : r.errors) {
        errors.push_back({{"url", e.url}, {"code", e.code}, {"message", e.message}});
    }
    return {
        {"fetched", r.fetched},
        {"accepted", r.accepted},
        {"rejected", r.rejected},
        {"explored", r.explored},
        {"deduplicated", r.deduplicated},
        {"fetch_errors", r.fetch_errors},
        {"errors", errors},
        {"accepted_webids", r.accepted_webids},
    };
}

namespace {

void record(IngestReport& report, const IngestOutcome& outcome) {
    if (!outcome.decision.accepted) {
        ++report.rejected;
        return;
    }
    ++report.accepted;
    if (outcome.decision.reason == DecisionReason::exploration) ++report.explored;
    if (outcome.deduplicated) ++report.deduplicated;
    if (outcome.article) report.accepted_webids.push_back(outcome.article->webid);
}

void record_failure(IngestReport& report, const std::string& url, ErrorCode code,
                    const std::string& message) {
    ++report.fetch_errors;
    report.errors.push_back({url, std::string(to_string(code)), message});
}

void process(const RawDocument& doc, const UserProfile& profile, UniformSource& rng,
             IngestSink& sink, IngestReport& report) {
    try {
        record(report, ingest_one(doc, profile, rng, sink));
    } catch (const Error& e) {
        record_failure(report, doc.url, e.code(), e.what());
    }
}

}  // namespace

// Article construction and scoring run as parallel kernels; decisions and stores then
// happen in document order so the rng stream is consumed exactly as ingest_one would.
IngestReport ingest_batch(const std::vector<RawDocument>& docs, const UserProfile& profile,
                          UniformSource& rng, IngestSink& sink) {
    auto built = kernels::build_articles(docs, sink.stopwords, sink.now);
    std::vector<FeatureSet> features(built.size());
    for (std::size_t i = 0; i < built.size(); ++i) {
        if (built[i].article) features[i] = built[i].article->features;
    }
    const auto scores = kernels::importance_batch(features, profile);

    IngestReport report;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        ++report.fetched;
        if (!built[i].article) {
            record_failure(report, docs[i].url, built[i].error, built[i].message);
            continue;
        }
        try {
            const FilterDecision d = decide_scored(scores[i], built[i].article->venue, profile, rng);
            record(report, store_decided(std::move(*built[i].article), d, sink));
        } catch (const Error& e) {
            record_failure(report, docs[i].url, e.code(), e.what());
        }
    }
    std::sort(report.accepted_webids.begin(), report.accepted_webids.end());
    report.accepted_webids.erase(
        std::unique(report.accepted_webids.begin(), report.accepted_webids.end()),
        report.accepted_webids.end());
    return report;
}

// ---------------------------------------------------------------------------
// Fetchers

CorpusFetcher::CorpusFetcher(const std::vector<RawDocument>& docs) {
    for (const auto& d : docs) {
        try {
            by_url_.emplace(normalize_url(d.url), d);
        } catch (const Error&) {
            // Unaddressable documents cannot be seeds.
        }
    }
}

RawDocument CorpusFetcher::fetch(const std::string& url) const {
    const auto it = by_url_.find(normalize_url(url));
    if (it == by_url_.end()) throw Error(ErrorCode::fetch_error, "not in corpus: " + url);
    return it->second;
}

RawDocument FileFetcher::fetch(const std::string& url) const {
    constexpr std::string_view prefix = "file://";
    if (url.rfind(prefix, 0) != 0) throw Error(ErrorCode::fetch_error, "not a file url: " + url);
    const std::string path = url.substr(prefix.size());
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::fetch_error, "cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, path + ": " + e.what());
    }
    if (j.is_object() && !j.contains("url")) j["url"] = url;
    return parse_raw_document(j);
}

DefaultFetcher::DefaultFetcher(std::vector<RawDocument> corpus, std::chrono::milliseconds timeout)
    : http_(timeout) {
    if (!corpus.empty()) corpus_.emplace(corpus);
}

RawDocument DefaultFetcher::fetch(const std::string& url) const {
    if (corpus_) {
        try {
            return corpus_->fetch(url);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::fetch_error) throw;
        }
    }
    const std::string normalized = normalize_url(url);
    if (normalized.rfind("file://", 0) == 0) return file_.fetch(url);
    if (normalized.rfind("http://", 0) == 0 || normalized.rfind("https://", 0) == 0) {
        return http_.fetch(url);
    }
    throw Error(ErrorCode::fetch_error, "no adapter for " + url);
}

// ---------------------------------------------------------------------------
// Crawl

IngestReport crawl(const std::vector<std::string>& seeds, const UserProfile& profile,
                   const Fetcher& fetcher, IngestSink& sink, const CrawlOptions& options) {
    if (options.workers == 0) throw Error(ErrorCode::invalid_request, "workers must be >= 1");
    const std::size_t workers = std::min(options.workers, std::max<std::size_t>(seeds.size(), 1));

    std::atomic<std::size_t> next{0};
    std::vector<IngestReport> partial(workers);
    // (seed index, failure) so the merged error list does not depend on scheduling.
    std::vector<std::vector<std::pair<std::size_t, IngestFailure>>> failures(workers);

    auto work = [&](std::size_t w) {
        SeededUniform rng(worker_seed(options.seed, w));
        IngestReport& report = partial[w];
        for (std::size_t i = next.fetch_add(1); i < seeds.size(); i = next.fetch_add(1)) {
            ++report.fetched;
            const std::size_t before = report.errors.size();
            try {
                const RawDocument doc = fetcher.fetch(seeds[i]);
                process(doc, profile, rng, sink, report);
            } catch (const Error& e) {
                record_failure(report, seeds[i], e.code(), e.what());
            } catch (const std::exception& e) {
                record_failure(report, seeds[i], ErrorCode::fetch_error, e.what());
            }
            for (std::size_t k = before; k < report.errors.size(); ++k) {
                failures[w].emplace_back(i, report.errors[k]);
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    IngestReport total;
    std::vector<std::pair<std::size_t, IngestFailure>> ordered;
    for (std::size_t w = 0; w < workers; ++w) {
        partial[w].errors.clear();
        total.merge(partial[w]);
        ordered.insert(ordered.end(), failures[w].begin(), failures[w].end());
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [_, f] : ordered) total.errors.push_back(std::move(f));
    return total;
}

}  // namespace seeker
