#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "seeker/kernels.hpp"
#include "seeker/probfilter.hpp"
#include "seeker/recommend.hpp"

namespace {

using namespace seeker;

const std::vector<std::string> kVocab = {
    "neural",    "network",  "retrieval", "ranking",   "graph",    "protein",  "folding",
    "language",  "model",    "crawler",   "index",     "query",    "semantic", "learning",
    "attention", "transfer", "sparse",    "embedding", "citation", "summary",  "corpus",
    "bayesian",  "kernel",   "gradient",  "robust",    "privacy",  "federated"};

std::string random_text(std::mt19937_64& rng, int words) {
    std::uniform_int_distribution<std::size_t> pick(0, kVocab.size() - 1);
    std::string s;
    for (int i = 0; i < words; ++i) {
        s += kVocab[pick(rng)];
        s += (i % 12 == 11) ? ". " : " ";
    }
    return s;
}

std::vector<RawDocument> make_docs(std::size_t n) {
    std::mt19937_64 rng(7);
    std::vector<RawDocument> docs;
    for (std::size_t i = 0; i < n; ++i) {
        docs.push_back({"https://bench.example/p/" + std::to_string(i), random_text(rng, 8),
                        random_text(rng, 120), {"A. Author"}, "Bench Venue", 2020});
    }
    return docs;
}

const StopwordList& stopwords() {
    static const StopwordList s{"the", "a", "of", "and"};
    return s;
}

std::vector<FeatureSet> make_features(std::size_t n) {
    std::mt19937_64 rng(11);
    std::vector<FeatureSet> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(extract_features(random_text(rng, 15), stopwords()));
    return out;
}

UserProfile bench_profile() {
    UserProfile p = make_profile("bench");
    p.preference_features = extract_features("neural network retrieval ranking graph", stopwords());
    p.input_features = extract_features("language model query semantic", stopwords());
    return p;
}

struct CfFixture {
    ImplicitMatrix m;
    std::vector<std::string> pool;
};

CfFixture make_cf(std::size_t users, std::size_t items) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> item(0, items - 1);
    std::uniform_int_distribution<int> rating(1, 3);
    CfFixture f;
    for (std::size_t u = 0; u < users; ++u) {
        for (int j = 0; j < 20; ++j) f.m.add("u" + std::to_string(u), "i" + std::to_string(item(rng)), rating(rng));
    }
    for (std::size_t i = 0; i < items; ++i) f.pool.push_back("i" + std::to_string(i));
    return f;
}

const Timestamp kNow = make_timestamp(2024, 6, 1);

void BM_BuildArticles_Serial(benchmark::State& state) {
    const auto docs = make_docs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::build_articles_serial(docs, stopwords(), kNow));
}
void BM_BuildArticles_OpenMP(benchmark::State& state) {
    const auto docs = make_docs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::build_articles(docs, stopwords(), kNow));
}

void BM_Importance_Serial(benchmark::State& state) {
    const auto f = make_features(static_cast<std::size_t>(state.range(0)));
    const auto p = bench_profile();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::importance_batch_serial(f, p));
}
void BM_Importance_OpenMP(benchmark::State& state) {
    const auto f = make_features(static_cast<std::size_t>(state.range(0)));
    const auto p = bench_profile();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::importance_batch(f, p));
}

void BM_CfRaw_Serial(benchmark::State& state) {
    const auto f = make_cf(200, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::cf_raw_scores_serial(f.m, "u0", f.pool));
}
void BM_CfRaw_OpenMP(benchmark::State& state) {
    const auto f = make_cf(200, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::cf_raw_scores(f.m, "u0", f.pool));
}

void BM_ScorePairs_Serial(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::vector<std::string> c, r;
    for (int i = 0; i < state.range(0); ++i) {
        c.push_back(random_text(rng, 6));
        r.push_back(random_text(rng, 6));
    }
    for (auto _ : state) benchmark::DoNotOptimize(kernels::score_pairs_serial(c, r));
}
void BM_ScorePairs_OpenMP(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::vector<std::string> c, r;
    for (int i = 0; i < state.range(0); ++i) {
        c.push_back(random_text(rng, 6));
        r.push_back(random_text(rng, 6));
    }
    for (auto _ : state) benchmark::DoNotOptimize(kernels::score_pairs(c, r));
}

}  // namespace

BENCHMARK(BM_BuildArticles_Serial)->Arg(256)->Arg(2048);
BENCHMARK(BM_BuildArticles_OpenMP)->Arg(256)->Arg(2048);
BENCHMARK(BM_Importance_Serial)->Arg(4096)->Arg(65536);
BENCHMARK(BM_Importance_OpenMP)->Arg(4096)->Arg(65536);
BENCHMARK(BM_CfRaw_Serial)->Arg(500);
BENCHMARK(BM_CfRaw_OpenMP)->Arg(500);
BENCHMARK(BM_ScorePairs_Serial)->Arg(1024);
BENCHMARK(BM_ScorePairs_OpenMP)->Arg(1024);

BENCHMARK_MAIN();
