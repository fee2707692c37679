#include "seeker/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "seeker/error.hpp"
#include "seeker/kernels.hpp"

namespace seeker {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Records

RewritePair parse_rewrite_pair(const nlohmann::json& j) {
    RewritePair p;
    try {
        p.everyday = j.at("everyday").get<std::string>();
        if (j.contains("domain") && !j.at("domain").is_null()) {
            p.domain = j.at("domain").get<std::string>();
        }
        for (const auto& t : j.at("academic_terms")) {
            p.academic_terms.push_back(
                {t.at("term").get<std::string>(), t.at("definition").get<std::string>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_request, std::string("bad rewrite pair: ") + e.what());
    }
    if (trim(p.everyday).empty()) throw Error(ErrorCode::invalid_request, "everyday must be non-empty");
    if (p.academic_terms.empty()) throw Error(ErrorCode::invalid_request, "pair needs an academic term");
    for (const auto& t : p.academic_terms) {
        if (trim(t.term).empty() || trim(t.definition).empty()) {
            throw Error(ErrorCode::invalid_request, "terms and definitions must be non-empty");
        }
    }
    return p;
}

nlohmann::json rewrite_pair_to_json(const RewritePair& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : p.academic_terms) terms.push_back({{"term", t.term}, {"definition", t.definition}});
    nlohmann::json j = {{"everyday", p.everyday}, {"academic_terms", terms}};
    j["domain"] = p.domain ? nlohmann::json(*p.domain) : nlohmann::json(nullptr);
    return j;
}

std::vector<RewritePair> load_rewrite_pairs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
    std::vector<RewritePair> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        try {
            pairs.push_back(parse_rewrite_pair(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw Error(ErrorCode::parse_error, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return pairs;
}

nlohmann::json rewrite_result_to_json(const RewriteResult& r) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : r.terms) terms.push_back({{"term", t.term}, {"definition", t.definition}});
    return {
        {"original", r.original},
        {"terms", terms},
        {"backend", r.backend == RewriteBackendKind::remote ? "remote" : "lexicon"},
        {"fallback_used", r.fallback_used},
    };
}

std::string candidate_text(const RewriteResult& r) {
    if (r.terms.empty()) return r.original;
    std::string out;
    for (const auto& t : r.terms) {
        if (!out.empty()) out += ' ';
        out += t.term;
    }
    return out;
}

std::string reference_text(const RewritePair& p) {
    std::string out;
    for (const auto& t : p.academic_terms) {
        if (!out.empty()) out += ' ';
        out += t.term;
    }
    return out;
}

std::string normalize_query(std::string_view text) {
    std::string out;
    bool space = false;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            space = !out.empty();
            continue;
        }
        if (space) out += ' ';
        space = false;
        out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lexicon backend

void LexiconRewriter::add(std::string_view everyday, std::string_view domain, AcademicTerm term) {
    auto& bucket = table_[{normalize_query(everyday), normalize_query(domain)}];
    if (std::find(bucket.begin(), bucket.end(), term) != bucket.end()) return;
    bucket.push_back(std::move(term));
    ++entries_;
}

LexiconRewriter LexiconRewriter::parse(std::string_view tsv) {
    LexiconRewriter lex;
    std::istringstream in{std::string(tsv)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || trim(line).front() == '#') continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1) {
            cols.push_back(line.substr(start, tab - start));
        }
        cols.push_back(line.substr(start));
        if (cols.size() != 4 || trim(cols[0]).empty() || trim(cols[2]).empty() || trim(cols[3]).empty()) {
            throw Error(ErrorCode::parse_error, "lexicon line " + std::to_string(lineno) +
                                                    ": expected everyday<TAB>domain<TAB>term<TAB>definition");
        }
        lex.add(cols[0], cols[1], {trim(cols[2]), trim(cols[3])});
    }
    return lex;
}

LexiconRewriter LexiconRewriter::load(const std::filesystem::path& path) { return parse(read_text(path)); }

LexiconRewriter LexiconRewriter::from_pairs(const std::vector<RewritePair>& pairs) {
    LexiconRewriter lex;
    for (const auto& p : pairs) {
        for (const auto& t : p.academic_terms) {
            if (p.domain) lex.add(p.everyday, *p.domain, t);
            lex.add(p.everyday, "", t);
        }
    }
    return lex;
}

RewriteResult LexiconRewriter::rewrite(std::string_view query,
                                       const std::optional<std::string>& domain) const {
    RewriteResult r;
    r.original = std::string(query);
    r.backend = RewriteBackendKind::lexicon;
    const std::string key = normalize_query(query);
    if (domain && !normalize_query(*domain).empty()) {
        if (auto it = table_.find({key, normalize_query(*domain)}); it != table_.end()) {
            r.terms = it->second;
            return r;
        }
    }
    if (auto it = table_.find({key, ""}); it != table_.end()) {
        r.terms = it->second;
        return r;
    }
    r.fallback_used = true;
    return r;
}

// ---------------------------------------------------------------------------
// Prompts

std::optional<ShotMode> parse_shot_mode(std::string_view text) noexcept {
    if (text == "zero") return ShotMode::zero;
    if (text == "one") return ShotMode::one;
    if (text == "few") return ShotMode::few;
    return std::nullopt;
}

std::string build_prompt(std::string_view system_role, const std::vector<RewritePair>& shots,
                         std::string_view query, ShotMode mode) {
    std::size_t used = 0;
    switch (mode) {
        case ShotMode::zero: used = 0; break;
        case ShotMode::one:
            if (shots.empty()) throw Error(ErrorCode::insufficient_shots, "one-shot prompt needs a shot");
            used = 1;
            break;
        case ShotMode::few:
            if (shots.size() < 2) throw Error(ErrorCode::insufficient_shots, "few-shot prompt needs two shots");
            used = shots.size();
            break;
    }
    std::string prompt(system_role);
    prompt += "\n\n";
    for (std::size_t i = 0; i < used; ++i) {
        prompt += "Q: ";
        prompt += shots[i].everyday;
        prompt += "\nA: ";
        for (std::size_t t = 0; t < shots[i].academic_terms.size(); ++t) {
            if (t > 0) prompt += '\n';
            prompt += shots[i].academic_terms[t].term;
            prompt += " — ";
            prompt += shots[i].academic_terms[t].definition;
        }
        prompt += "\n\n";
    }
    prompt += "Q: ";
    prompt += query;
    prompt += "\nA:";
    return prompt;
}

std::vector<AcademicTerm> parse_term_lines(std::string_view text) {
    static constexpr std::string_view kSeparators[] = {"\xE2\x80\x94", "\xE2\x80\x93", " - "};
    std::vector<AcademicTerm> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::string body = trim(line);
        if (body.rfind("A:", 0) == 0) body = trim(body.substr(2));
        if (!body.empty() && (body.front() == '-' || body.front() == '*')) body = trim(body.substr(1));
        for (auto sep : kSeparators) {
            const auto pos = body.find(sep);
            if (pos == std::string::npos) continue;
            std::string term = trim(body.substr(0, pos));
            std::string def = trim(body.substr(pos + sep.size()));
            if (!term.empty() && !def.empty()) out.push_back({std::move(term), std::move(def)});
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Corpus and evaluation

std::pair<std::vector<RewritePair>, std::vector<RewritePair>> split_corpus(
    std::vector<RewritePair> pairs, double train_fraction, std::uint64_t seed) {
    if (pairs.empty()) throw Error(ErrorCode::empty_corpus, "cannot split an empty corpus");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw Error(ErrorCode::invalid_request, "train_fraction must lie in (0, 1)");
    }
    std::mt19937_64 engine(seed);
    for (std::size_t i = pairs.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(engine() % (i + 1));
        std::swap(pairs[i], pairs[j]);
    }
    const auto n_train = static_cast<std::size_t>(
        std::floor(static_cast<double>(pairs.size()) * train_fraction));
    std::vector<RewritePair> train(std::make_move_iterator(pairs.begin()),
                                   std::make_move_iterator(pairs.begin() + static_cast<std::ptrdiff_t>(n_train)));
    std::vector<RewritePair> validation(std::make_move_iterator(pairs.begin() + static_cast<std::ptrdiff_t>(n_train)),
                                        std::make_move_iterator(pairs.end()));
    return {std::move(train), std::move(validation)};
}

EvalScores evaluate(const Rewriter& rewriter, const std::vector<RewritePair>& validation) {
    if (validation.empty()) throw Error(ErrorCode::empty_corpus, "validation set is empty");
    std::vector<std::string> candidates;
    std::vector<std::string> references;
    candidates.reserve(validation.size());
    references.reserve(validation.size());
    for (const auto& p : validation) {
        candidates.push_back(candidate_text(rewriter.rewrite(p.everyday, p.domain)));
        references.push_back(reference_text(p));
    }
    return kernels::mean_scores(kernels::score_pairs(candidates, references));
}

nlohmann::json eval_scores_to_json(const EvalScores& s) {
    return {{"bleu", s.bleu},     {"rouge1", s.rouge1}, {"rouge2", s.rouge2},
            {"rougeL", s.rougeL}, {"meteor", s.meteor}};
}

}  // namespace seeker
