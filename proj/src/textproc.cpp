#include "seeker/textproc.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "seeker/error.hpp"

namespace seeker {

namespace {

bool is_alnum_ascii(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char lower_ascii(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

bool ends_with(std::string_view s, std::string_view suffix) noexcept {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// One application of the first matching rule; returns false when none fires.
bool strip_once(std::string& w) {
    if (ends_with(w, "ies")) {
        w.replace(w.size() - 3, 3, "y");
        return true;
    }
    if (ends_with(w, "sses")) {
        w.erase(w.size() - 2);
        return true;
    }
    if (ends_with(w, "s") && w.size() > 3 && !ends_with(w, "ss") && !ends_with(w, "us")) {
        w.pop_back();
        return true;
    }
    if (ends_with(w, "ing") && w.size() - 3 >= 3) {
        w.erase(w.size() - 3);
        return true;
    }
    if (ends_with(w, "ed") && w.size() - 2 >= 3) {
        w.erase(w.size() - 2);
        return true;
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// FeatureSet

FeatureSet::FeatureSet(std::initializer_list<std::string> terms)
    : FeatureSet(std::vector<std::string>(terms)) {}

FeatureSet::FeatureSet(std::vector<std::string> terms) : terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end());
    terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
}

bool FeatureSet::insert(std::string term) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
    if (it != terms_.end() && *it == term) return false;
    terms_.insert(it, std::move(term));
    return true;
}

bool FeatureSet::erase(const std::string& term) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
    if (it == terms_.end() || *it != term) return false;
    terms_.erase(it);
    return true;
}

bool FeatureSet::contains(std::string_view term) const {
    return std::binary_search(terms_.begin(), terms_.end(), term,
                              [](std::string_view a, std::string_view b) { return a < b; });
}

std::string FeatureSet::joined() const {
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

std::size_t intersection_size(const FeatureSet& a, const FeatureSet& b) noexcept {
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        const int c = i->compare(*j);
        if (c == 0) {
            ++n;
            ++i;
            ++j;
        } else if (c < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    return n;
}

// ---------------------------------------------------------------------------
// Stopwords

StopwordList::StopwordList(std::initializer_list<std::string> words) : words_(words) {}

StopwordList StopwordList::parse(std::string_view text) {
    StopwordList list;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string word = line.substr(first, last - first + 1);
        std::transform(word.begin(), word.end(), word.begin(), lower_ascii);
        list.words_.insert(std::move(word));
    }
    return list;
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot read stopword file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

// ---------------------------------------------------------------------------
// Pipeline

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (is_alnum_ascii(c)) {
            current += lower_ascii(c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string lemmatize(std::string_view token) {
    std::string w(token);
    while (strip_once(w)) {
    }
    return w;
}

std::vector<std::string> content_terms(std::string_view text, const StopwordList& stopwords) {
    std::vector<std::string> out;
    for (auto& tok : tokenize(text)) {
        if (stopwords.contains(tok)) continue;
        std::string lemma = lemmatize(tok);
        if (stopwords.contains(lemma)) continue;
        out.push_back(std::move(lemma));
    }
    return out;
}

FeatureSet extract_features(std::string_view text, const StopwordList& stopwords) {
    return FeatureSet(content_terms(text, stopwords));
}

// ---------------------------------------------------------------------------
// TermStats

void TermStats::add_document(const std::vector<std::string>& terms) {
    ++documents_;
    total_terms_ += terms.size();
    for (const auto& t : terms) ++cf_[t];
    std::vector<std::string> unique = terms;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto& t : unique) ++df_[t];
}

void TermStats::remove_document(const std::vector<std::string>& terms) {
    if (documents_ == 0) return;
    --documents_;
    total_terms_ -= std::min(total_terms_, terms.size());
    for (const auto& t : terms) {
        if (auto it = cf_.find(t); it != cf_.end() && --it->second == 0) cf_.erase(it);
    }
    std::vector<std::string> unique = terms;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto& t : unique) {
        if (auto it = df_.find(t); it != df_.end() && --it->second == 0) df_.erase(it);
    }
}

std::size_t TermStats::document_frequency(const std::string& term) const {
    auto it = df_.find(term);
    return it == df_.end() ? 0 : it->second;
}

std::size_t TermStats::corpus_frequency(const std::string& term) const {
    auto it = cf_.find(term);
    return it == cf_.end() ? 0 : it->second;
}

}  // namespace seeker
