#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "seeker/article.hpp"
#include "seeker/config.hpp"
#include "seeker/engine.hpp"
#include "seeker/error.hpp"
#include "seeker/rewrite.hpp"
#include "seeker/server.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct Globals {
    bool json = false;
    std::string data_dir;
    std::string config_path;
    std::string remote_url;
};

seeker::Config make_config(const Globals& g) {
    seeker::Config c = g.config_path.empty() ? seeker::Config{} : seeker::Config::load(g.config_path);
    c.apply_env();
    if (!g.data_dir.empty()) c.data_dir = g.data_dir;
    if (!g.remote_url.empty()) c.remote_url = g.remote_url;
    c.validate();
    return c;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw seeker::Error(seeker::ErrorCode::io_error, "cannot read " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(b, e - b + 1));
    }
    return out;
}

std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void print_report(const nlohmann::json& r) {
    std::cout << "fetched       " << r.at("fetched") << '\n'
              << "accepted      " << r.at("accepted") << '\n'
              << "explored      " << r.at("explored") << '\n'
              << "rejected      " << r.at("rejected") << '\n'
              << "deduplicated  " << r.at("deduplicated") << '\n'
              << "fetch_errors  " << r.at("fetch_errors") << '\n';
    for (const auto& e : r.at("errors")) {
        std::cout << "  error " << e.at("code").get<std::string>() << "  " << e.at("url").get<std::string>()
                  << "  " << e.at("message").get<std::string>() << '\n';
    }
    for (const auto& w : r.at("accepted_webids")) std::cout << "  stored " << w.get<std::string>() << '\n';
}

void print_rewrite(const nlohmann::json& r) {
    std::cout << "query     " << r.at("original").get<std::string>() << '\n'
              << "backend   " << r.at("backend").get<std::string>()
              << (r.at("fallback_used").get<bool>() ? " (fallback)" : "") << '\n';
    for (const auto& t : r.at("terms")) {
        std::cout << "  " << t.at("term").get<std::string>() << " — " << t.at("definition").get<std::string>() << '\n';
    }
}

void emit(const Globals& g, const nlohmann::json& payload, void (*human)(const nlohmann::json&)) {
    if (g.json) {
        std::cout << payload.dump() << '\n';
    } else {
        human(payload);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seeker: personalized academic search, crawl and recommendation"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "Print the API JSON payload instead of a table");
    app.add_option("--data-dir", g.data_dir, "Data directory (overrides SEEKER_DATA_DIR)");
    app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--remote-url", g.remote_url, "Remote rewrite endpoint");

    std::string user, corpus, seeds_file, query, domain, webid, kind, pairs_file, backend = "lexicon";
    std::size_t k = 10, workers = 0;
    bool rewrite = false, validation_only = false;
    int port = -1;

    auto* ingest = app.add_subcommand("ingest", "Filter and store documents from a JSONL corpus");
    ingest->add_option("--corpus", corpus)->required()->check(CLI::ExistingFile);
    ingest->add_option("--user", user)->required();

    auto* crawl = app.add_subcommand("crawl", "Fetch seed urls with the worker pool and ingest them");
    crawl->add_option("--seeds", seeds_file)->required()->check(CLI::ExistingFile);
    crawl->add_option("--user", user)->required();
    crawl->add_option("--workers", workers)->check(CLI::PositiveNumber);
    crawl->add_option("--corpus", corpus, "Serve seeds from this JSONL corpus before the network")
        ->check(CLI::ExistingFile);

    auto* search = app.add_subcommand("search", "Ranked search over stored articles");
    search->add_option("query", query)->required();
    search->add_option("--user", user)->required();
    search->add_flag("--rewrite", rewrite);
    search->add_option("--domain", domain);
    search->add_option("-k", k);

    auto* recommend = app.add_subcommand("recommend", "Recommendations for a user");
    recommend->add_option("--user", user)->required();
    recommend->add_option("-k", k);

    auto* rewrite_cmd = app.add_subcommand("rewrite", "Translate an everyday query into academic terms");
    rewrite_cmd->add_option("query", query)->required();
    rewrite_cmd->add_option("--domain", domain);

    auto* eval = app.add_subcommand("eval-rewriter", "Score a rewriter backend on a pairs file");
    eval->add_option("--pairs", pairs_file)->required()->check(CLI::ExistingFile);
    eval->add_option("--backend", backend)->check(CLI::IsMember({"lexicon", "remote"}));
    eval->add_flag("--validation-only", validation_only, "Score only the held-out tenth of a seeded split");

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));

    auto* summarize_cmd = app.add_subcommand("summarize", "One-sentence summary of a stored article");
    summarize_cmd->add_option("--webid", webid)->required();

    auto* interact = app.add_subcommand("interact", "Record a click, read, bookmark or like");
    interact->add_option("--user", user)->required();
    interact->add_option("--webid", webid)->required();
    interact->add_option("--kind", kind)->required()->check(CLI::IsMember({"click", "read", "bookmark", "like"}));

    if (argc <= 1) {
        std::cerr << app.help();
        return kExitUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    const auto opt_domain = domain.empty() ? std::nullopt : std::optional<std::string>(domain);

    try {
        seeker::Config config = make_config(g);
        if (*serve_cmd) {
            if (port >= 0) config.port = port;
            seeker::serve(config);
            return kExitOk;
        }
        seeker::Engine engine(config);

        if (*ingest) {
            emit(g, engine.ingest(user, seeker::load_corpus(corpus)), print_report);
        } else if (*crawl) {
            std::vector<seeker::RawDocument> docs;
            if (!corpus.empty()) docs = seeker::load_corpus(corpus);
            const seeker::DefaultFetcher fetcher(std::move(docs), config.remote_timeout);
            const std::optional<std::size_t> w = workers > 0 ? std::optional(workers) : std::nullopt;
            emit(g, engine.crawl(user, read_lines(seeds_file), w, fetcher), print_report);
        } else if (*search) {
            seeker::SearchRequest r{user, query, k, rewrite, opt_domain};
            emit(g, engine.search(r), [](const nlohmann::json& out) {
                if (out.contains("rewrite")) print_rewrite(out.at("rewrite"));
                std::size_t rank = 0;
                for (const auto& row : out.at("results")) {
                    std::cout << ++rank << "  " << row.at("webid").get<std::string>() << "  "
                              << fixed(row.at("total").get<double>()) << "  "
                              << row.at("title").get<std::string>() << '\n';
                }
                if (rank == 0) std::cout << "no results\n";
                std::cout << "cloud:";
                for (const auto& t : out.at("wordcloud")) {
                    std::cout << ' ' << t.at("term").get<std::string>() << '(' << t.at("count") << ')';
                }
                std::cout << '\n';
            });
        } else if (*recommend) {
            emit(g, engine.recommendations(user, k), [](const nlohmann::json& out) {
                std::size_t rank = 0;
                for (const auto& row : out) {
                    std::cout << ++rank << "  " << row.at("webid").get<std::string>() << "  "
                              << fixed(row.at("score").get<double>()) << "  "
                              << row.at("title").get<std::string>() << '\n';
                }
                if (rank == 0) std::cout << "no recommendations\n";
            });
        } else if (*rewrite_cmd) {
            emit(g, engine.rewrite(query, opt_domain), print_rewrite);
        } else if (*eval) {
            auto pairs = seeker::load_rewrite_pairs(pairs_file);
            if (validation_only) pairs = seeker::split_corpus(std::move(pairs), 0.9, config.seed).second;
            const auto kind_of = backend == "remote" ? seeker::RewriteBackendKind::remote
                                                     : seeker::RewriteBackendKind::lexicon;
            emit(g, engine.evaluate_rewriter(pairs, kind_of), [](const nlohmann::json& out) {
                const auto& s = out.at("scores");
                std::cout << "backend  " << out.at("backend").get<std::string>() << "  (" << out.at("pairs")
                          << " pairs)\n"
                          << "BLEU     " << fixed(s.at("bleu").get<double>()) << '\n'
                          << "ROUGE-1  " << fixed(s.at("rouge1").get<double>()) << '\n'
                          << "ROUGE-2  " << fixed(s.at("rouge2").get<double>()) << '\n'
                          << "ROUGE-L  " << fixed(s.at("rougeL").get<double>()) << '\n'
                          << "METEOR   " << fixed(s.at("meteor").get<double>()) << '\n';
            });
        } else if (*summarize_cmd) {
            emit(g, engine.summary(webid), [](const nlohmann::json& out) {
                std::cout << out.at("summary").get<std::string>() << '\n';
            });
        } else if (*interact) {
            emit(g, engine.add_interaction(user, webid, kind), [](const nlohmann::json& out) {
                std::cout << "recorded " << out.at("kind").get<std::string>() << " on "
                          << out.at("webid").get<std::string>() << " at " << out.at("at").get<std::string>()
                          << '\n';
            });
        }
        return kExitOk;
    } catch (const seeker::Error& e) {
        std::cerr << "error: " << seeker::to_string(e.code()) << ": " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
