#pragma once

#include <string_view>

namespace seeker {

// Text-conversion metrics over textproc tokens (lowercase alphanumeric runs, no
// stopword removal). Every score lies in [0, 1].

/// Sentence BLEU: modified n-gram precision for n = 1..4, skipping orders the
/// candidate is too short to have, geometric mean, brevity penalty exp(1 - r/c) when
/// c < r. Zero for an empty candidate or any counted order with zero precision.
double bleu(std::string_view candidate, std::string_view reference);

/// F1 of clipped n-gram overlap; 0 when either side has no n-grams. Identical
/// non-empty token sequences score 1 even when shorter than n.
double rouge_n(std::string_view candidate, std::string_view reference, int n);

/// F1 from the longest common subsequence of tokens.
double rouge_l(std::string_view candidate, std::string_view reference);

/// Unigram alignment (exact, then lemma). F = P*R / (0.9*P + 0.1*R),
/// penalty = 0.5 * (chunks / matches)^3, score = F * (1 - penalty).
double meteor(std::string_view candidate, std::string_view reference);

struct EvalScores {
    double bleu = 0.0;
    double rouge1 = 0.0;
    double rouge2 = 0.0;
    double rougeL = 0.0;
    double meteor = 0.0;

    EvalScores& operator+=(const EvalScores& o);
    EvalScores& operator/=(double d);
};

EvalScores score_pair(std::string_view candidate, std::string_view reference);

}  // namespace seeker
