#include <doctest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include "seeker/error.hpp"
#include "seeker/ingest.hpp"
#include "seeker/store.hpp"
#include "test_support.hpp"

using namespace seeker;

namespace {

Article sample(const std::string& url, const std::string& title, const std::string& abstract) {
    RawDocument raw{url, title, abstract, {"A. Author"}, "Venue", 2021};
    return build_article(raw, testing::stopwords(), make_timestamp(2024, 1, 1));
}

}  // namespace

TEST_CASE("blob insert-if-absent has exactly one winner under contention") {
    BlobStore blobs;
    for (int round = 0; round < 20; ++round) {
        const std::string hash = "h" + std::to_string(round);
        std::atomic<int> winners{0};
        std::vector<std::thread> threads;
        for (int t = 0; t < 8; ++t) {
            threads.emplace_back([&] {
                if (blobs.insert_if_absent(hash, "text")) ++winners;
            });
        }
        for (auto& t : threads) t.join();
        CHECK(winners == 1);
    }
    CHECK(blobs.blob_count() == 20);
}

TEST_CASE("pointers require an existing blob") {
    BlobStore blobs;
    CHECK_THROWS_AS(blobs.link("w1", "missing"), Error);
    blobs.insert_if_absent("h", "body");
    CHECK(blobs.link("w1", "h"));
    CHECK(!blobs.link("w1", "h"));
    CHECK(blobs.target("w1") == "h");
    CHECK(blobs.blob("h") == "body");
    CHECK(blobs.dangling_pointers().empty());
}

TEST_CASE("blob store persists to disk") {
    testing::TempDir dir;
    {
        BlobStore blobs(dir.path());
        blobs.insert_if_absent("abc", "hello\nworld");
        blobs.link("w1", "abc");
        blobs.link("w2", "abc");
    }
    BlobStore again(dir.path());
    CHECK(again.blob_count() == 1);
    CHECK(again.pointer_count() == 2);
    CHECK(again.blob("abc") == "hello\nworld");
    CHECK(std::filesystem::exists(dir.path() / "blobs" / "abc"));
    std::ifstream ptr(dir.path() / "pointers.tsv");
    std::string line;
    std::getline(ptr, line);
    CHECK(line == "w1\tabc");
}

TEST_CASE("article store put results and dedup") {
    ArticleStore store;
    const Article a = sample("https://x.org/1", "Graph kernels", "Kernels on graphs.");
    const Article copy = sample("https://mirror.org/1", "Graph kernels", "Kernels on graphs.");
    CHECK(store.put(a) == ArticleStore::PutResult::stored);
    CHECK(store.put(a) == ArticleStore::PutResult::unchanged);
    CHECK(store.put(copy) == ArticleStore::PutResult::deduplicated);
    CHECK(store.size() == 2);
    CHECK(store.blobs().blob_count() == 1);
    CHECK(store.blobs().pointer_count() == 2);
    const auto back = store.get(copy.webid);
    REQUIRE(back);
    CHECK(back->title == "Graph kernels");
    CHECK(back->content_hash == a.content_hash);
}

TEST_CASE("article store reloads text through the blob pointer") {
    testing::TempDir dir;
    const Article a = sample("https://x.org/2", "Sparse attention", "Sparse patterns. Long inputs.");
    {
        ArticleStore store(dir.path());
        store.put(a);
    }
    ArticleStore again(dir.path());
    const auto back = again.get(a.webid);
    REQUIRE(back);
    CHECK(back->title == a.title);
    CHECK(back->abstract == a.abstract);
    CHECK(back->features == a.features);
    CHECK(back->summary == a.summary);
    CHECK(back->fetched_at == a.fetched_at);
    CHECK(again.all().size() == 1);
}
