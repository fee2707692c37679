#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace seeker {

/// A set of normalized term codes. Stored as a sorted, duplicate-free vector so
/// overlap counts are a linear merge.
class FeatureSet {
  public:
    using const_iterator = std::vector<std::string>::const_iterator;

    FeatureSet() = default;
    FeatureSet(std::initializer_list<std::string> terms);
    explicit FeatureSet(std::vector<std::string> terms);

    bool insert(std::string term);
    bool erase(const std::string& term);
    bool contains(std::string_view term) const;

    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    const_iterator begin() const noexcept { return terms_.begin(); }
    const_iterator end() const noexcept { return terms_.end(); }
    const std::vector<std::string>& terms() const noexcept { return terms_; }

    /// Space-joined terms in sorted order.
    std::string joined() const;

    friend bool operator==(const FeatureSet&, const FeatureSet&) = default;

  private:
    std::vector<std::string> terms_;
};

std::size_t intersection_size(const FeatureSet& a, const FeatureSet& b) noexcept;

class StopwordList {
  public:
    StopwordList() = default;
    StopwordList(std::initializer_list<std::string> words);

    /// One lowercase word per line; '#' starts a comment; blank lines ignored.
    static StopwordList parse(std::string_view text);
    static StopwordList load(const std::filesystem::path& path);

    bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
    std::size_t size() const noexcept { return words_.size(); }

  private:
    std::unordered_set<std::string> words_;
};

/// Maximal runs of ASCII letters/digits, lowercased. Everything else separates.
std::vector<std::string> tokenize(std::string_view text);

/// Ordered suffix stripping applied until no rule fires:
///   -ies -> y, -sses -> ss, -s -> "" (len > 3, not -ss/-us),
///   -ing -> "" (stem >= 3), -ed -> "" (stem >= 3).
std::string lemmatize(std::string_view token);

/// tokenize -> drop stopwords -> lemmatize, keeping multiplicity and order. A lemma
/// that is itself a stopword is dropped as well.
std::vector<std::string> content_terms(std::string_view text, const StopwordList& stopwords);

/// content_terms, deduplicated.
FeatureSet extract_features(std::string_view text, const StopwordList& stopwords);

/// Document and corpus frequencies over a collection of term sequences.
class TermStats {
  public:
    void add_document(const std::vector<std::string>& terms);
    void remove_document(const std::vector<std::string>& terms);

    std::size_t document_count() const noexcept { return documents_; }
    std::size_t document_frequency(const std::string& term) const;
    std::size_t corpus_frequency(const std::string& term) const;
    std::size_t total_terms() const noexcept { return total_terms_; }

  private:
    std::size_t documents_ = 0;
    std::size_t total_terms_ = 0;
    std::map<std::string, std::size_t> df_;
    std::map<std::string, std::size_t> cf_;
};

}  // namespace seeker
