// Acceptance suite: one PASS/FAIL line per primary criterion.

#include <sys/wait.h>

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seeker/error.hpp"
#include "seeker/ingest.hpp"
#include "seeker/metrics.hpp"
#include "seeker/probfilter.hpp"
#include "seeker/recommend.hpp"
#include "seeker/rewrite.hpp"
#include "seeker/searchidx.hpp"
#include "seeker/wordcloud.hpp"
#include "test_support.hpp"

using namespace seeker;
using testing::fixture;
using testing::stopwords;

namespace {

struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

struct Criterion {
    std::string name;
    double budget_ms;  // 0: no runtime bound
    std::function<void()> body;
};

const Timestamp kNow = make_timestamp(2024, 6, 1, 12);

// ---------------------------------------------------------------------------

double jaccard_bits(unsigned a, unsigned b) {
    const int uni = std::popcount(a | b);
    return uni == 0 ? 0.0 : static_cast<double>(std::popcount(a & b)) / static_cast<double>(uni);
}

FeatureSet set_of(unsigned mask) {
    static const char* names[] = {"u0", "u1", "u2", "u3", "u4", "u5"};
    FeatureSet f;
    for (unsigned i = 0; i < 6; ++i) {
        if (mask & (1u << i)) f.insert(names[i]);
    }
    return f;
}

void eq1_oracle() {
    std::vector<FeatureSet> sets;
    for (unsigned m = 0; m < 64; ++m) sets.push_back(set_of(m));
    const std::pair<double, double> weights[] = {{0.5, 0.5}, {0.6, 0.4}, {1.0, 0.0}, {0.0, 1.0}, {0.25, 0.75}};
    double worst = 0.0;
    for (const auto& [wp, wi] : weights) {
        UserProfile p = make_profile("oracle");
        set_weights(p, wp, wi);
        for (unsigned u = 0; u < 64; ++u) {
            p.preference_features = sets[u];
            for (unsigned i = 0; i < 64; ++i) {
                p.input_features = sets[i];
                for (unsigned a = 0; a < 64; ++a) {
                    const double want = wp * jaccard_bits(a, u) + wi * jaccard_bits(a, i);
                    worst = std::max(worst, std::abs(importance(sets[a], p) - want));
                }
            }
        }
    }
    expect(worst <= 1e-12, "max deviation " + std::to_string(worst));
}

void threshold_semantics() {
    UserProfile p = make_profile("t", 0.75, 0.05);
    ScriptedUniform any({0.0});
    const auto at = decide_scored(0.75, "venue", p, any);
    expect(at.accepted && at.reason == DecisionReason::above_threshold, "I=0.75 must be above_threshold");
    p.explore_prob = 0.0;
    for (double u : {0.0, 0.5, 0.999}) {
        ScriptedUniform rng({u});
        const auto below = decide_scored(0.7499, "venue", p, rng);
        expect(!below.accepted && below.reason == DecisionReason::rejected, "I=0.7499 with eps=0 must reject");
    }
}

void exploration_rate() {
    const UserProfile p = make_profile("e", 0.75, 0.05);
    SeededUniform rng(20240601);
    std::size_t accepted = 0;
    const std::size_t n = 100000;
    for (std::size_t i = 0; i < n; ++i) {
        if (decide_scored(0.3, "venue", p, rng).accepted) ++accepted;
    }
    const double rate = static_cast<double>(accepted) / static_cast<double>(n);
    expect(rate >= 0.045 && rate <= 0.055, "exploration rate " + std::to_string(rate));
}

void dedup() {
    testing::TempDir dir;
    const auto docs = load_corpus(fixture("dedup100.jsonl"));
    expect(docs.size() == 100, "fixture must hold 100 documents");
    const UserProfile accept_all = make_profile("d", 0.0, 0.0);
    for (int run = 0; run < 2; ++run) {
        ArticleStore store(dir.path());
        IngestSink sink{stopwords(), store, nullptr, kNow};
        SeededUniform rng(1);
        const auto report = ingest_batch(docs, accept_all, rng, sink);
        expect(report.accepted == 100, "all documents accepted");
        expect(store.blobs().blob_count() == 60, "blobs " + std::to_string(store.blobs().blob_count()));
        expect(store.blobs().pointer_count() == 100, "pointers " + std::to_string(store.blobs().pointer_count()));
    }
    BlobStore reopened(dir.path());
    expect(reopened.blob_count() == 60 && reopened.pointer_count() == 100, "counts after reload");
}

void metric_oracles() {
    const std::pair<double, double> cases[] = {
        {bleu("the cat sat", "the cat sat down"), std::exp(1.0 - 4.0 / 3.0)},
        {rouge_n("a b c", "a b d", 1), 2.0 / 3.0},
        {rouge_n("a b c", "a b d", 2), 0.5},
        {rouge_l("a b c d", "a c b d"), 0.75},
        {meteor("deep learning", "deep learning"), 0.9375},
        {meteor("neural networks", "neural network"), 0.9375},
    };
    for (const auto& [got, want] : cases) {
        expect(std::abs(got - want) <= 1e-6, "got " + std::to_string(got) + " want " + std::to_string(want));
    }
    const std::string s = "dense passage retrieval with learned encoders";
    expect(bleu(s, s) == 1.0 && rouge_n(s, s, 1) == 1.0 && rouge_n(s, s, 2) == 1.0 && rouge_l(s, s) == 1.0,
           "identical strings must score exactly 1");
}

// Returns the reference terms with one token removed from the candidate text.
class DegradedRewriter final : public Rewriter {
  public:
    explicit DegradedRewriter(const std::vector<RewritePair>& pairs) {
        for (const auto& p : pairs) table_[normalize_query(p.everyday)] = p.academic_terms;
    }
    RewriteResult rewrite(std::string_view query, const std::optional<std::string>&) const override {
        RewriteResult r;
        r.original = std::string(query);
        auto it = table_.find(normalize_query(query));
        if (it == table_.end()) return r;
        r.terms = it->second;
        auto& last = r.terms.back().term;
        const auto cut = last.find_last_of(' ');
        last = cut == std::string::npos ? std::string() : last.substr(0, cut);
        return r;
    }

  private:
    std::map<std::string, std::vector<AcademicTerm>> table_;
};

void rewriter_monotonicity() {
    const auto pairs = load_rewrite_pairs(fixture("rewrite_pairs60.jsonl"));
    expect(pairs.size() == 60, "fixture must hold 60 pairs");
    const EvalScores perfect = evaluate(LexiconRewriter::from_pairs(pairs), pairs);
    const EvalScores degraded = evaluate(DegradedRewriter(pairs), pairs);
    const EvalScores pass = evaluate(LexiconRewriter{}, pairs);
    auto as_vec = [](const EvalScores& s) {
        return std::vector<double>{s.bleu, s.rouge1, s.rouge2, s.rougeL, s.meteor};
    };
    const auto p = as_vec(perfect), d = as_vec(degraded), t = as_vec(pass);
    for (std::size_t i = 0; i < p.size(); ++i) {
        expect(p[i] >= d[i] && d[i] >= t[i], "ordering broken on metric " + std::to_string(i));
    }
    expect(perfect.bleu > degraded.bleu && degraded.bleu > pass.bleu, "BLEU not strict");
    expect(perfect.rouge1 > degraded.rouge1 && degraded.rouge1 > pass.rouge1, "ROUGE-1 not strict");
}

std::string ranking_bytes(const std::vector<RankedResult>& r) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& x : r) j.push_back({x.webid, x.total, x.relevance, x.recency, x.preference});
    return j.dump();
}

std::unique_ptr<InvertedIndex> index_of(const std::vector<Article>& arts) {
    auto idx = std::make_unique<InvertedIndex>(std::make_shared<StopwordList>(stopwords()));
    for (const auto& a : arts) idx->index_article(a);
    return idx;
}

void search_determinism() {
    std::vector<Article> arts;
    for (const auto& d : load_corpus(fixture("search20.jsonl"))) arts.push_back(build_article(d, stopwords(), kNow));
    expect(arts.size() == 20, "fixture must hold 20 documents");
    UserProfile p = make_profile("s");
    p.preference_features = {"retrieval", "neural", "graph"};
    p.input_features = {"query"};
    std::vector<Article> reversed(arts.rbegin(), arts.rend());
    for (const char* q : {"retrieval ranking", "neural networks", "federated learning hospitals", "attention"}) {
        const auto a = ranking_bytes(index_of(arts)->search(q, p, 10, kNow));
        const auto b = ranking_bytes(index_of(reversed)->search(q, p, 10, kNow));
        expect(a == b, std::string("rankings differ for '") + q + "'");
    }

    auto art = [](const std::string& id, const std::string& text, int year) {
        return build_article({"https://flip.example/" + id, text, text, {}, "V", year}, stopwords(), kNow);
    };
    const auto fresh = art("new", "Sparse attention", 2024);
    const auto old = art("old", "Sparse attention", 2021);
    const auto r1 = index_of({old, fresh})->search("sparse attention", make_profile("x"), 5, kNow);
    expect(r1.size() == 2 && r1[0].webid == fresh.webid, "recency flip");
    expect(std::abs(r1[1].recency - 0.125) < 1e-12, "three-year recency must be 0.125");

    const auto liked = art("liked", "Retrieval kernel", 2024);
    const auto other = art("other", "Retrieval lattice", 2024);
    UserProfile k = make_profile("k");
    k.preference_features = {"kernel"};
    const auto r2 = index_of({other, liked})->search("retrieval", k, 5, kNow);
    expect(r2.size() == 2 && r2[0].webid == liked.webid, "preference flip");
}

void recommender_oracle() {
    ImplicitMatrix m;
    m.add("u1", "A", 3);
    m.add("u1", "B", 3);
    m.add("u2", "B", 3);
    m.add("u2", "C", 3);
    const double sim = 9.0 / (3.0 * std::sqrt(18.0));
    expect(std::abs(item_similarity(m, "A", "B") - sim) <= 1e-9, "sim(A,B)");
    expect(std::abs(item_similarity(m, "A", "C")) <= 1e-9, "sim(A,C)");
    expect(std::abs(cf_raw_score(m, "u2", "A") - 3.0 * sim) <= 1e-9, "cf(u2,A)");

    std::vector<Article> arts;
    for (int y : {2018, 2024, 2021, 2023}) {
        Article a;
        a.webid = "y" + std::to_string(y);
        a.year = y;
        arts.push_back(a);
    }
    const auto recs = recommend(arts, {}, "newcomer", 10, kNow);
    std::vector<std::string> order;
    for (const auto& r : recs) order.push_back(r.webid);
    expect(order == std::vector<std::string>{"y2024", "y2023", "y2021", "y2018"}, "cold start must rank by recency");
}

void word_cloud() {
    std::vector<Article> arts;
    for (const auto& d : load_corpus(fixture("search20.jsonl"))) arts.push_back(build_article(d, stopwords(), kNow));
    // Brute-force counter: raw tokens, stopword filter, lemma, stopword filter again.
    std::map<std::string, std::size_t> counts;
    for (const auto& a : arts) {
        for (const auto& tok : tokenize(a.title + " " + a.abstract)) {
            if (stopwords().contains(tok)) continue;
            const auto lemma = lemmatize(tok);
            if (!stopwords().contains(lemma)) ++counts[lemma];
        }
    }
    for (std::size_t n = 0; n <= arts.size(); n += 5) {
        const std::vector<Article> subset(arts.begin(), arts.begin() + static_cast<std::ptrdiff_t>(n));
        expect(build_cloud(subset, stopwords()).size() <= 20, "more than 20 terms");
    }
    const auto cloud = build_cloud(arts, stopwords());
    expect(cloud.size() == std::min<std::size_t>(20, counts.size()), "cloud size");
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        expect(cloud[i].term == ranked[i].first && cloud[i].count == ranked[i].second,
               "mismatch at rank " + std::to_string(i) + ": " + cloud[i].term);
    }
}

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(SEEKER_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string quoted(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

void end_to_end() {
    testing::TempDir dir;
    const auto cfg = dir.path() / "config.json";
    std::ofstream(cfg) << R"({"threshold": 0.0, "remote_rewrite": {"url": "http://127.0.0.1:9/v1/complete", "timeout_ms": 300}})";
    const std::string base = "--config " + quoted(cfg) + " --data-dir " + quoted(dir.path() / "data");

    expect(run_cli("").status == 1, "no arguments must exit 1");
    expect(run_cli("--frobnicate").status == 1, "unknown flag must exit 1");

    const auto ingest = run_cli(base + " --json ingest --corpus " + quoted(fixture("corpus10.jsonl")) + " --user e2e");
    expect(ingest.status == 0, "ingest exit");
    expect(nlohmann::json::parse(ingest.out).at("accepted") == 10, "ingest accepted count");

    const auto search = run_cli(base + " --json search 'lattice protein' --user e2e -k 5 --rewrite");
    expect(search.status == 0, "search exit");
    const auto found = nlohmann::json::parse(search.out);
    const std::string protein = webid("https://papers.example.org/misc/1");
    expect(!found.at("results").empty() && found.at("results")[0].at("webid") == protein, "fixture webid not found");
    expect(found.at("rewrite").at("fallback_used") == true, "unreachable remote must fall back");

    const auto like = run_cli(base + " interact --user e2e --webid " + protein + " --kind like");
    expect(like.status == 0, "like exit");
    std::ifstream pf(dir.path() / "data" / "profiles" / "e2e.json");
    expect(pf.good(), "profile file missing");
    const auto profile = nlohmann::json::parse(pf);
    std::set<std::string> ku;
    for (const auto& t : profile.at("preference_features")) ku.insert(t.get<std::string>());
    const auto doc = load_corpus(fixture("corpus10.jsonl"))[4];
    for (const auto& t : extract_features(doc.title + " " + doc.abstract, stopwords())) {
        expect(ku.contains(t), "K_u lacks liked feature " + t);
    }

    const auto rec = run_cli(base + " --json recommend --user e2e -k 20");
    expect(rec.status == 0, "recommend exit");
    const auto recs = nlohmann::json::parse(rec.out);
    expect(recs.size() == 9, "recommendations should cover the 9 untouched articles");
    for (const auto& r : recs) expect(r.at("webid") != protein, "interacted item recommended");

    const auto human = run_cli(base + " search lattice --user e2e");
    expect(human.status == 0 && human.out.find(protein) != std::string::npos, "table output lacks webid");
    expect(run_cli(base + " summarize --webid 0000000000000000").status == 2, "missing webid must exit 2");
    const auto eval = run_cli(base + " eval-rewriter --pairs " + quoted(fixture("perfect_pairs.jsonl")));
    expect(eval.status == 0 && eval.out.find("BLEU     1.0000") != std::string::npos, "perfect rewriter BLEU");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"importance matches brute-force Jaccard oracle over a 6-term universe", 5000, eq1_oracle},
        {"threshold semantics at 0.75 are exact", 0, threshold_semantics},
        {"exploration rate over 100000 seeded decisions within [0.045, 0.055]", 10000, exploration_rate},
        {"dedup fixture yields 60 blobs and 100 pointers, stable on rerun", 0, dedup},
        {"metric oracles reproduce hand-derived values", 1000, metric_oracles},
        {"rewriter evaluation ordering perfect >= degraded >= pass-through", 0, rewriter_monotonicity},
        {"search determinism and blend flip cases", 1000, search_determinism},
        {"recommender cf oracle and cold-start recency ordering", 0, recommender_oracle},
        {"word cloud size and counts match brute force", 0, word_cloud},
        {"end-to-end CLI ingest, search, like, recommend", 5000, end_to_end},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string problem;
        try {
            c.body();
        } catch (const Failure& f) {
            problem = f.what;
        } catch (const std::exception& e) {
            problem = std::string("exception: ") + e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (problem.empty() && c.budget_ms > 0 && ms > c.budget_ms) {
            problem = "took " + std::to_string(ms) + " ms, budget " + std::to_string(c.budget_ms) + " ms";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.1f ms", ms);
        if (problem.empty()) {
            std::cout << "PASS  " << c.name << "  (" << timing << ")\n";
        } else {
            ++failures;
            std::cout << "FAIL  " << c.name << "  (" << timing << "): " << problem << "\n";
        }
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
              << " acceptance criteria passed\n";
    return failures == 0 ? 0 : 1;
}
