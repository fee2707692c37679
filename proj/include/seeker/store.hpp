#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "seeker/article.hpp"

namespace seeker {

/// Content-addressed text blobs plus a webid -> content hash pointer map. Duplicate
/// content is stored once no matter how many webids point at it.
///
/// On disk (when constructed with a directory):
///   blobs/<content_hash>   UTF-8 text
///   pointers.tsv           "webid<TAB>content_hash" lines, last line per webid wins
///
/// All members are safe to call concurrently.
class BlobStore {
  public:
    BlobStore() = default;
    explicit BlobStore(std::filesystem::path dir);

    /// Stores `text` under `hash` unless already present. Returns true when a new blob
    /// was written. Linearizable: of racing inserts for one hash exactly one wins.
    bool insert_if_absent(const std::string& hash, const std::string& text);

    /// Points `webid` at `hash`, which must already be stored. Returns false when the
    /// pointer already had that target (nothing written).
    bool link(const std::string& webid, const std::string& hash);

    std::optional<std::string> blob(const std::string& hash) const;
    std::optional<std::string> target(const std::string& webid) const;

    std::size_t blob_count() const;
    std::size_t pointer_count() const;

    /// Pointers whose target blob is missing. Empty unless the store is corrupt.
    std::vector<std::string> dangling_pointers() const;

  private:
    void load();

    mutable std::mutex mutex_;
    std::optional<std::filesystem::path> dir_;
    std::map<std::string, std::string> blobs_;
    std::map<std::string, std::string> pointers_;
};

/// Accepted articles: blob store for text plus a metadata log (articles.jsonl) that
/// carries everything except the title/abstract text, which is read back through the
/// article's content-hash pointer.
class ArticleStore {
  public:
    enum class PutResult { stored, deduplicated, unchanged };

    ArticleStore() = default;
    explicit ArticleStore(std::filesystem::path dir);

    ArticleStore(const ArticleStore&) = delete;
    ArticleStore& operator=(const ArticleStore&) = delete;

    /// stored: new content. deduplicated: content already present, new or re-pointed
    /// webid. unchanged: same webid with same content and metadata already stored.
    PutResult put(const Article& article);

    std::optional<Article> get(const std::string& webid) const;
    bool contains(const std::string& webid) const;

    /// Snapshot ordered by webid.
    std::vector<Article> all() const;
    std::size_t size() const;

    const BlobStore& blobs() const noexcept { return blobs_; }

  private:
    void load();
    void append_metadata(const Article& article);

    mutable std::mutex mutex_;
    std::optional<std::filesystem::path> dir_;
    BlobStore blobs_;
    std::map<std::string, Article> articles_;
};

}  // namespace seeker
