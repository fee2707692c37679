#include "seeker/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "seeker/textproc.hpp"

namespace seeker {

namespace {

using Tokens = std::vector<std::string>;
using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts ngrams(const Tokens& tokens, std::size_t n) {
    NgramCounts counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        ++counts[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                        tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    return counts;
}

int clipped_overlap(const NgramCounts& cand, const NgramCounts& ref) {
    int overlap = 0;
    for (const auto& [gram, count] : cand) {
        if (auto it = ref.find(gram); it != ref.end()) overlap += std::min(count, it->second);
    }
    return overlap;
}

double f1(double precision, double recall) {
    if (precision + recall <= 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

double bleu(std::string_view candidate, std::string_view reference) {
    const Tokens cand = tokenize(candidate);
    const Tokens ref = tokenize(reference);
    if (cand.empty()) return 0.0;

    double log_sum = 0.0;
    int orders = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        if (cand.size() < n) break;
        const auto c = ngrams(cand, n);
        const int overlap = clipped_overlap(c, ngrams(ref, n));
        if (overlap == 0) return 0.0;
        log_sum += std::log(static_cast<double>(overlap) / static_cast<double>(cand.size() - n + 1));
        ++orders;
    }
    const double c_len = static_cast<double>(cand.size());
    const double r_len = static_cast<double>(ref.size());
    const double bp = c_len < r_len ? std::exp(1.0 - r_len / c_len) : 1.0;
    return bp * std::exp(log_sum / orders);
}

double rouge_n(std::string_view candidate, std::string_view reference, int n) {
    if (n < 1) return 0.0;
    const Tokens ct = tokenize(candidate);
    const Tokens rt = tokenize(reference);
    // Identical non-empty token sequences score 1 even when shorter than n.
    if (!ct.empty() && ct == rt) return 1.0;
    const auto c = ngrams(ct, static_cast<std::size_t>(n));
    const auto r = ngrams(rt, static_cast<std::size_t>(n));
    if (c.empty() || r.empty()) return 0.0;
    int c_total = 0, r_total = 0;
    for (const auto& [_, k] : c) c_total += k;
    for (const auto& [_, k] : r) r_total += k;
    const double overlap = clipped_overlap(c, r);
    return f1(overlap / c_total, overlap / r_total);
}

double rouge_l(std::string_view candidate, std::string_view reference) {
    const Tokens c = tokenize(candidate);
    const Tokens r = tokenize(reference);
    if (c.empty() || r.empty()) return 0.0;
    const double lcs = static_cast<double>(lcs_length(c, r));
    return f1(lcs / static_cast<double>(c.size()), lcs / static_cast<double>(r.size()));
}

double meteor(std::string_view candidate, std::string_view reference) {
    const Tokens c = tokenize(candidate);
    const Tokens r = tokenize(reference);
    if (c.empty() || r.empty()) return 0.0;

    // align[i] = reference position matched to candidate token i, or npos.
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> align(c.size(), none);
    std::vector<bool> ref_used(r.size(), false);

    auto run_stage = [&](auto&& same) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (align[i] != none) continue;
            // Prefer the reference slot that extends the previous match's chunk.
            std::size_t pick = none;
            if (i > 0 && align[i - 1] != none && align[i - 1] + 1 < r.size() &&
                !ref_used[align[i - 1] + 1] && same(c[i], r[align[i - 1] + 1])) {
                pick = align[i - 1] + 1;
            }
            for (std::size_t j = 0; pick == none && j < r.size(); ++j) {
                if (!ref_used[j] && same(c[i], r[j])) pick = j;
            }
            if (pick != none) {
                align[i] = pick;
                ref_used[pick] = true;
            }
        }
    };
    run_stage([](const std::string& a, const std::string& b) { return a == b; });
    run_stage([](const std::string& a, const std::string& b) { return lemmatize(a) == lemmatize(b); });

    std::size_t matches = 0;
    std::size_t chunks = 0;
    std::size_t prev = none;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (align[i] == none) {
            prev = none;
            continue;
        }
        ++matches;
        if (prev == none || align[i] != prev + 1) ++chunks;
        prev = align[i];
    }
    if (matches == 0) return 0.0;

    const double p = static_cast<double>(matches) / static_cast<double>(c.size());
    const double rc = static_cast<double>(matches) / static_cast<double>(r.size());
    const double f = p * rc / (0.9 * p + 0.1 * rc);
    const double frag = static_cast<double>(chunks) / static_cast<double>(matches);
    const double penalty = 0.5 * frag * frag * frag;
    return f * (1.0 - penalty);
}

EvalScores& EvalScores::operator+=(const EvalScores& o) {
    bleu += o.bleu;
    rouge1 += o.rouge1;
    rouge2 += o.rouge2;
    rougeL += o.rougeL;
    meteor += o.meteor;
    return *this;
}

EvalScores& EvalScores::operator/=(double d) {
    bleu /= d;
    rouge1 /= d;
    rouge2 /= d;
    rougeL /= d;
    meteor /= d;
    return *this;
}

EvalScores score_pair(std::string_view candidate, std::string_view reference) {
    return {bleu(candidate, reference), rouge_n(candidate, reference, 1),
            rouge_n(candidate, reference, 2), rouge_l(candidate, reference),
            meteor(candidate, reference)};
}

}  // namespace seeker
