#include "seeker/store.hpp"

#include <fstream>
#include <sstream>

#include "seeker/error.hpp"

namespace seeker {

namespace fs = std::filesystem;

namespace {

void append_line(const fs::path& path, const std::string& line) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw Error(ErrorCode::io_error, "cannot append to " + path.string());
    out << line << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomically(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error(ErrorCode::io_error, "write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace

// ---------------------------------------------------------------------------
// BlobStore

BlobStore::BlobStore(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(*dir_ / "blobs");
    load();
}

void BlobStore::load() {
    for (const auto& entry : fs::directory_iterator(*dir_ / "blobs")) {
        if (!entry.is_regular_file() || entry.path().extension() == ".tmp") continue;
        blobs_[entry.path().filename().string()] = read_file(entry.path());
    }
    std::ifstream in(*dir_ / "pointers.tsv");
    std::string line;
    while (std::getline(in, line)) {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        pointers_[line.substr(0, tab)] = line.substr(tab + 1);
    }
}

bool BlobStore::insert_if_absent(const std::string& hash, const std::string& text) {
    std::lock_guard lock(mutex_);
    if (blobs_.contains(hash)) return false;
    if (dir_) write_file_atomically(*dir_ / "blobs" / hash, text);
    blobs_.emplace(hash, text);
    return true;
}

bool BlobStore::link(const std::string& webid, const std::string& hash) {
    std::lock_guard lock(mutex_);
    if (!blobs_.contains(hash)) {
        throw Error(ErrorCode::invalid_request, "pointer target " + hash + " is not stored");
    }
    if (auto it = pointers_.find(webid); it != pointers_.end() && it->second == hash) return false;
    if (dir_) append_line(*dir_ / "pointers.tsv", webid + "\t" + hash);
    pointers_[webid] = hash;
    return true;
}

std::optional<std::string> BlobStore::blob(const std::string& hash) const {
    std::lock_guard lock(mutex_);
    if (auto it = blobs_.find(hash); it != blobs_.end()) return it->second;
    return std::nullopt;
}

std::optional<std::string> BlobStore::target(const std::string& webid) const {
    std::lock_guard lock(mutex_);
    if (auto it = pointers_.find(webid); it != pointers_.end()) return it->second;
    return std::nullopt;
}

std::size_t BlobStore::blob_count() const {
    std::lock_guard lock(mutex_);
    return blobs_.size();
}

std::size_t BlobStore::pointer_count() const {
    std::lock_guard lock(mutex_);
    return pointers_.size();
}

std::vector<std::string> BlobStore::dangling_pointers() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [webid, hash] : pointers_) {
        if (!blobs_.contains(hash)) out.push_back(webid);
    }
    return out;
}

// ---------------------------------------------------------------------------
// ArticleStore

namespace {

nlohmann::json metadata_json(const Article& a) {
    return {
        {"webid", a.webid},
        {"authors", a.authors},
        {"venue", a.venue},
        {"year", a.year},
        {"source_url", a.source_url},
        {"features", a.features.terms()},
        {"content_hash", a.content_hash},
        {"fetched_at", format_timestamp(a.fetched_at)},
        {"summary", a.summary},
    };
}

bool same_metadata(const Article& a, const Article& b) {
    return a.content_hash == b.content_hash && a.authors == b.authors && a.venue == b.venue &&
           a.year == b.year && a.source_url == b.source_url && a.summary == b.summary;
}

void split_text(const std::string& text, Article& a) {
    const auto nl = text.find('\n');
    a.title = text.substr(0, nl);
    a.abstract = nl == std::string::npos ? std::string{} : text.substr(nl + 1);
}

}  // namespace

ArticleStore::ArticleStore(fs::path dir) : dir_(dir), blobs_(dir) { load(); }

void ArticleStore::load() {
    std::ifstream in(*dir_ / "articles.jsonl");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Article a;
        try {
            const auto j = nlohmann::json::parse(line);
            a.webid = j.at("webid").get<std::string>();
            a.authors = j.at("authors").get<std::vector<std::string>>();
            a.venue = j.at("venue").get<std::string>();
            a.year = j.at("year").get<int>();
            a.source_url = j.at("source_url").get<std::string>();
            a.features = FeatureSet(j.at("features").get<std::vector<std::string>>());
            a.content_hash = j.at("content_hash").get<std::string>();
            a.fetched_at = parse_timestamp(j.at("fetched_at").get<std::string>());
            a.summary = j.value("summary", std::string{});
        } catch (const std::exception& e) {
            throw Error(ErrorCode::parse_error,
                        "articles.jsonl:" + std::to_string(lineno) + ": " + e.what());
        }
        // Metadata written after its pointer; a pointer that never got metadata (crash
        // between the two appends) is simply not an article.
        const auto text = blobs_.blob(a.content_hash);
        if (!text) continue;
        split_text(*text, a);
        articles_[a.webid] = std::move(a);
    }
}

void ArticleStore::append_metadata(const Article& a) {
    if (dir_) append_line(*dir_ / "articles.jsonl", metadata_json(a).dump());
}

ArticleStore::PutResult ArticleStore::put(const Article& article) {
    std::lock_guard lock(mutex_);
    if (auto it = articles_.find(article.webid);
        it != articles_.end() && same_metadata(it->second, article)) {
        return PutResult::unchanged;
    }
    const bool new_blob = blobs_.insert_if_absent(article.content_hash, article.text());
    blobs_.link(article.webid, article.content_hash);
    append_metadata(article);
    articles_[article.webid] = article;
    return new_blob ? PutResult::stored : PutResult::deduplicated;
}

std::optional<Article> ArticleStore::get(const std::string& webid) const {
    std::lock_guard lock(mutex_);
    if (auto it = articles_.find(webid); it != articles_.end()) return it->second;
    return std::nullopt;
}

bool ArticleStore::contains(const std::string& webid) const {
    std::lock_guard lock(mutex_);
    return articles_.contains(webid);
}

std::vector<Article> ArticleStore::all() const {
    std::lock_guard lock(mutex_);
    std::vector<Article> out;
    out.reserve(articles_.size());
    for (const auto& [_, a] : articles_) out.push_back(a);
    return out;
}

std::size_t ArticleStore::size() const {
    std::lock_guard lock(mutex_);
    return articles_.size();
}

}  // namespace seeker
