#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "seeker/textproc.hpp"

namespace seeker {

struct Summary {
    std::string webid;
    std::string text;
    std::vector<std::size_t> source_sentence_indices;
};

/// Splits after '.', '!' or '?' when followed by whitespace or end of text. A period
/// does not end a sentence after a known abbreviation ("Dr.", "e.g.") or after a
/// single-letter initial that is followed by a capitalized word ("J. Smith").
std::vector<std::string> split_sentences(std::string_view text);

/// Extractive summary: each sentence scores the sum, over its content terms, of that
/// term's frequency in the whole text, divided by the sentence's token count. The best
/// `max_sentences` are kept (earlier sentence wins ties) and emitted in source order,
/// joined by single spaces.
/// Throws Error(empty_input) when the text has no sentences, Error(invalid_request)
/// when max_sentences == 0.
Summary summarize(std::string_view text, const StopwordList& stopwords,
                  std::size_t max_sentences = 1);

}  // namespace seeker
