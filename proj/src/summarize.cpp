#include "seeker/summarize.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "seeker/error.hpp"

namespace seeker {

namespace {

constexpr std::array<std::string_view, 15> kAbbreviations = {
    "dr", "mr", "mrs", "ms", "prof", "st", "vs", "fig", "eq",
    "al", "e.g", "i.e", "cf", "approx", "jr"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_upper(c) || is_lower(c); }

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

// The word ending at `dot` (exclusive), lowercased, including inner periods.
std::string word_before(std::string_view text, std::size_t dot) {
    std::size_t b = dot;
    while (b > 0 && !is_space(text[b - 1])) --b;
    std::string w(text.substr(b, dot - b));
    std::transform(w.begin(), w.end(), w.begin(),
                   [](char c) { return is_upper(c) ? static_cast<char>(c + 32) : c; });
    while (!w.empty() && !is_alpha(w.front())) w.erase(w.begin());
    return w;
}

// Does a '.' at `dot` belong to an abbreviation or initial rather than ending a sentence?
bool period_is_guarded(std::string_view text, std::size_t dot) {
    const std::string word = word_before(text, dot);
    if (std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end()) {
        return true;
    }
    if (word.size() == 1 && is_alpha(word[0])) {
        // Initial: the next word must be capitalized and longer than one letter.
        std::size_t i = dot + 1;
        while (i < text.size() && is_space(text[i])) ++i;
        return i + 1 < text.size() && is_upper(text[i]) && is_lower(text[i + 1]);
    }
    return false;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        const bool boundary = i + 1 == text.size() || is_space(text[i + 1]);
        if (!boundary) continue;
        if (c == '.' && period_is_guarded(text, i)) continue;
        if (auto s = trim(text.substr(start, i + 1 - start)); !s.empty()) out.push_back(std::move(s));
        start = i + 1;
    }
    if (auto s = trim(text.substr(start)); !s.empty()) out.push_back(std::move(s));
    return out;
}

Summary summarize(std::string_view text, const StopwordList& stopwords, std::size_t max_sentences) {
    if (max_sentences == 0) throw Error(ErrorCode::invalid_request, "max_sentences must be >= 1");
    const auto sentences = split_sentences(text);
    if (sentences.empty()) throw Error(ErrorCode::empty_input, "nothing to summarize");

    std::map<std::string, std::size_t> freq;
    std::vector<std::vector<std::string>> terms(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        terms[i] = content_terms(sentences[i], stopwords);
        for (const auto& t : terms[i]) ++freq[t];
    }

    std::vector<double> score(sentences.size(), 0.0);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        const std::size_t tokens = tokenize(sentences[i]).size();
        if (tokens == 0) continue;
        double sum = 0.0;
        for (const auto& t : terms[i]) sum += static_cast<double>(freq[t]);
        score[i] = sum / static_cast<double>(tokens);
    }

    std::vector<std::size_t> order(sentences.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
    order.resize(std::min(max_sentences, order.size()));
    std::sort(order.begin(), order.end());

    Summary s;
    s.source_sentence_indices = order;
    for (std::size_t idx : order) {
        if (!s.text.empty()) s.text += ' ';
        s.text += sentences[idx];
    }
    return s;
}

}  // namespace seeker
