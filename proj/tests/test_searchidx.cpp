#include <doctest.h>

#include <cmath>
#include <fstream>

#include "seeker/error.hpp"
#include "seeker/ingest.hpp"
#include "seeker/searchidx.hpp"
#include "test_support.hpp"

using namespace seeker;
using testing::stopwords;

namespace {

const Timestamp kNow = make_timestamp(2024, 6, 1);

Article art(const std::string& id, const std::string& title, const std::string& abstract, int year = 2024) {
    return build_article({"https://idx.example/" + id, title, abstract, {}, "V", year}, stopwords(), kNow);
}

InvertedIndex fresh() { return InvertedIndex(std::make_shared<StopwordList>(stopwords())); }

// Hand-coded BM25 for one query term, used as an independent oracle.
double bm25_oracle(double tf, double df, double n, double dl, double avgdl) {
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    return idf * tf * 2.2 / (tf + 1.2 * (0.25 + 0.75 * dl / avgdl));
}

}  // namespace

TEST_CASE("index roundtrip and idempotence") {
    auto idx = fresh();
    const auto a = art("1", "Quasicrystal growth", "Growth of quasicrystal samples.");
    const auto b = art("2", "Protein folding", "Folding energy landscapes.");
    idx.index_article(a);
    idx.index_article(b);
    CHECK(idx.document_count() == 2);
    CHECK(idx.stats().document_count() == 2);
    const auto postings = idx.posting_count();
    idx.index_article(a);
    CHECK(idx.posting_count() == postings);
    CHECK(idx.document_count() == 2);

    const auto hits = idx.search("quasicrystal", make_profile("u"), 10, kNow);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].webid == a.webid);

    CHECK(idx.remove(a.webid));
    CHECK(!idx.remove(a.webid));
    CHECK(idx.search("quasicrystal", make_profile("u"), 10, kNow).empty());
    CHECK_THROWS_AS(idx.bm25({"x"}, a.webid), Error);
}

TEST_CASE("BM25 matches the hand formula and prefers the shorter document") {
    auto idx = fresh();
    const auto d1 = art("d1", "neural network training", "");
    const auto d2 = art("d2", "graph network", "");
    idx.index_article(d1);
    idx.index_article(d2);
    // d1 terms: neural network train (3); d2: graph network (2); avgdl 2.5
    CHECK(idx.bm25({"network"}, d1.webid) == doctest::Approx(bm25_oracle(1, 2, 2, 3, 2.5)).epsilon(1e-12));
    CHECK(idx.bm25({"network"}, d2.webid) == doctest::Approx(bm25_oracle(1, 2, 2, 2, 2.5)).epsilon(1e-12));
    CHECK(idx.bm25({"network"}, d2.webid) > idx.bm25({"network"}, d1.webid));
    CHECK(idx.relevance({"network"}, d2.webid) == 1.0);
    CHECK(idx.relevance({"absent"}, d1.webid) == 0.0);
}

TEST_CASE("single document relevance is 1") {
    auto idx = fresh();
    const auto d = art("only", "Lattice models", "Lattice energy.");
    idx.index_article(d);
    CHECK(idx.relevance({"lattice"}, d.webid) == 1.0);
}

TEST_CASE("recency score") {
    CHECK(recency_score(2024, kNow) == 1.0);
    CHECK(recency_score(2021, kNow) == doctest::Approx(0.125));
    CHECK(recency_score(2026, kNow) == 1.0);
}

TEST_CASE("search examples") {
    CHECK(fresh().search("anything", make_profile("u"), 5, kNow).empty());

    SUBCASE("newer document wins at equal relevance and preference") {
        auto idx = fresh();
        const auto now_doc = art("new", "Sparse attention", "Sparse attention.", 2024);
        const auto old_doc = art("old", "Sparse attention", "Sparse attention.", 2021);
        idx.index_article(now_doc);
        idx.index_article(old_doc);
        const auto r = idx.search("sparse attention", make_profile("u"), 5, kNow);
        REQUIRE(r.size() == 2);
        CHECK(r[0].webid == now_doc.webid);
        CHECK(r[1].recency == doctest::Approx(0.125));
        CHECK(r[0].relevance == r[1].relevance);
    }
    SUBCASE("profile overlap wins at equal relevance and recency") {
        auto idx = fresh();
        const auto liked = art("liked", "Retrieval kernel", "Retrieval kernel.");
        const auto other = art("other", "Retrieval lattice", "Retrieval lattice.");
        idx.index_article(liked);
        idx.index_article(other);
        UserProfile p = make_profile("u");
        p.preference_features = {"kernel"};
        const auto r = idx.search("retrieval", p, 5, kNow);
        REQUIRE(r.size() == 2);
        CHECK(r[0].relevance == doctest::Approx(r[1].relevance));
        CHECK(r[0].webid == liked.webid);
        CHECK(r[0].preference == doctest::Approx(similarity(liked.features, p.preference_features)));
        CHECK(r[1].preference == 0.0);
    }
}

TEST_CASE("search is deterministic, bounded by k, and ordered") {
    auto idx = fresh();
    for (const auto& d : load_corpus(testing::fixture("search20.jsonl"))) {
        idx.index_article(build_article(d, stopwords(), kNow));
    }
    UserProfile p = make_profile("u");
    p.preference_features = {"retrieval", "neural"};
    const auto a = idx.search("retrieval ranking models", p, 7, kNow);
    const auto b = idx.search("retrieval ranking models", p, 7, kNow);
    REQUIRE(a.size() == b.size());
    CHECK(a.size() <= 7);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].webid == b[i].webid);
        CHECK(a[i].total == b[i].total);
        CHECK(a[i].total >= 0.0);
        CHECK(a[i].total <= 1.0 + 1e-12);
        if (i > 0) CHECK(a[i - 1].total >= a[i].total);
    }
    CHECK_THROWS_AS(idx.search("x", p, 0, kNow), Error);
    CHECK_THROWS_AS(idx.search("x", p, 3, kNow, {0, 0, 0}), Error);
}

TEST_CASE("index dump lists postings per term") {
    testing::TempDir dir;
    auto idx = fresh();
    const auto d = art("dump", "Graph graph kernel", "");
    idx.index_article(d);
    idx.write_dump(dir.path() / "index.jsonl");
    std::ifstream in(dir.path() / "index.jsonl");
    std::string line;
    std::getline(in, line);
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("term") == "graph");
    CHECK(j.at("postings")[0][0] == d.webid);
    CHECK(j.at("postings")[0][1] == 2);
}
