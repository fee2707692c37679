#include <doctest.h>

#include <random>

#include "seeker/ingest.hpp"
#include "seeker/kernels.hpp"
#include "test_support.hpp"

using namespace seeker;
using testing::stopwords;

TEST_CASE("parallel kernels equal their serial references") {
    const Timestamp now = make_timestamp(2024, 6, 1);
    auto docs = load_corpus(testing::fixture("search20.jsonl"));
    const auto more = load_corpus(testing::fixture("dedup100.jsonl"));
    docs.insert(docs.end(), more.begin(), more.end());
    docs.push_back({"bad url", "t", "a", {}, "v", 2020});

    const auto par = kernels::build_articles(docs, stopwords(), now);
    const auto ser = kernels::build_articles_serial(docs, stopwords(), now);
    REQUIRE(par.size() == ser.size());
    std::vector<FeatureSet> features;
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].article.has_value() == ser[i].article.has_value());
        if (par[i].article) {
            CHECK(par[i].article->webid == ser[i].article->webid);
            CHECK(par[i].article->features == ser[i].article->features);
            CHECK(par[i].article->summary == ser[i].article->summary);
            features.push_back(par[i].article->features);
        } else {
            CHECK(par[i].error == ser[i].error);
        }
    }

    UserProfile p = make_profile("k");
    p.preference_features = {"retrieval", "graph", "kernel", "tensor"};
    p.input_features = {"neural", "query"};
    CHECK(kernels::importance_batch(features, p) == kernels::importance_batch_serial(features, p));

    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> pick(0, 29), rating(1, 3);
    ImplicitMatrix m;
    for (int i = 0; i < 400; ++i) m.add("u" + std::to_string(pick(rng) % 12), "i" + std::to_string(pick(rng)), rating(rng));
    std::vector<std::string> pool;
    for (int i = 0; i < 30; ++i) pool.push_back("i" + std::to_string(i));
    CHECK(kernels::cf_raw_scores(m, "u3", pool) == kernels::cf_raw_scores_serial(m, "u3", pool));

    std::vector<std::string> cands, refs;
    for (const auto& d : docs) {
        cands.push_back(d.title);
        refs.push_back(d.abstract);
    }
    const auto a = kernels::score_pairs(cands, refs);
    const auto b = kernels::score_pairs_serial(cands, refs);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].bleu == b[i].bleu);
        CHECK(a[i].rougeL == b[i].rougeL);
        CHECK(a[i].meteor == b[i].meteor);
    }
    CHECK(kernels::max_threads() >= 1);
}
