#include "seeker/server.hpp"

#include <httplib.h>

#include <iostream>

#include "seeker/error.hpp"

namespace seeker {

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, std::string_view message) {
    send_json(res, http_status(code), error_body(code, message));
}

nlohmann::json parse_body(const httplib::Request& req) {
    try {
        auto j = nlohmann::json::parse(req.body);
        if (!j.is_object()) throw Error(ErrorCode::invalid_request, "body must be a JSON object");
        return j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse_error, std::string("malformed JSON body: ") + e.what());
    }
}

std::string string_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw Error(ErrorCode::invalid_request, std::string("missing string field '") + key + "'");
    }
    return j.at(key).get<std::string>();
}

std::size_t k_field(const nlohmann::json& j, std::size_t fallback) {
    if (!j.contains("k")) return fallback;
    const auto& v = j.at("k");
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw Error(ErrorCode::invalid_k, "k must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::size_t parse_k(const std::string& text) {
    try {
        std::size_t used = 0;
        const long long k = std::stoll(text, &used);
        if (used != text.size() || k < 0) throw std::invalid_argument(text);
        return static_cast<std::size_t>(k);
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_k, "k must be a non-negative integer");
    }
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const Error& e) {
            send_error(res, e.code(), e.what());
        } catch (const nlohmann::json::exception& e) {
            send_error(res, ErrorCode::invalid_request, e.what());
        } catch (const std::exception& e) {
            send_error(res, ErrorCode::io_error, e.what());
        }
    };
}

}  // namespace

ApiServer::ApiServer(Engine& engine) : engine_(engine), server_(std::make_unique<httplib::Server>()) {
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    routes();
}

ApiServer::~ApiServer() = default;

void ApiServer::routes() {
    auto& s = *server_;
    Engine& e = engine_;

    s.Get("/v1/health", guarded([&e](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, e.health());
    }));

    s.Post("/v1/search", guarded([&e](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        SearchRequest r;
        r.user_id = string_field(body, "user_id");
        r.query = string_field(body, "query");
        r.k = k_field(body, r.k);
        r.rewrite = body.value("rewrite", false);
        if (body.contains("domain") && body.at("domain").is_string()) r.domain = body.at("domain").get<std::string>();
        send_json(res, 200, e.search(r));
    }));

    s.Post("/v1/ingest", guarded([&e](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        const auto user = string_field(body, "user_id");
        if (!body.contains("documents") || !body.at("documents").is_array()) {
            throw Error(ErrorCode::invalid_request, "documents must be an array");
        }
        std::vector<RawDocument> docs;
        for (const auto& d : body.at("documents")) docs.push_back(parse_raw_document(d));
        send_json(res, 200, e.ingest(user, docs));
    }));

    s.Post("/v1/crawl", guarded([&e](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        const auto user = string_field(body, "user_id");
        if (!body.contains("seeds") || !body.at("seeds").is_array()) {
            throw Error(ErrorCode::invalid_request, "seeds must be an array");
        }
        const auto seeds = body.at("seeds").get<std::vector<std::string>>();
        std::optional<std::size_t> workers;
        if (body.contains("workers")) {
            const auto& w = body.at("workers");
            if (!w.is_number_integer() || w.get<long long>() < 1) {
                throw Error(ErrorCode::invalid_request, "workers must be a positive integer");
            }
            workers = w.get<std::size_t>();
        }
        send_json(res, 200, e.crawl(user, seeds, workers));
    }));

    s.Get(R"(/v1/articles/([^/]+))", guarded([&e](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, e.article(req.matches[1]));
    }));

    s.Post("/v1/interactions", guarded([&e](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        send_json(res, 201,
                  e.add_interaction(string_field(body, "user_id"), string_field(body, "webid"),
                                    string_field(body, "kind")));
    }));

    s.Get("/v1/recommendations", guarded([&e](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("user_id")) throw Error(ErrorCode::invalid_request, "user_id is required");
        const std::size_t k = req.has_param("k") ? parse_k(req.get_param_value("k")) : 10;
        send_json(res, 200, e.recommendations(req.get_param_value("user_id"), k));
    }));

    s.Get(R"(/v1/profile/([^/]+))", guarded([&e](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, e.profile(req.matches[1]));
    }));

    s.Put(R"(/v1/profile/([^/]+))", guarded([&e](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, e.update_profile(req.matches[1], parse_body(req)));
    }));

    s.Post("/v1/rewrite", guarded([&e](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        std::optional<std::string> domain;
        if (body.contains("domain") && body.at("domain").is_string()) domain = body.at("domain").get<std::string>();
        send_json(res, 200, e.rewrite(string_field(body, "query"), domain));
    }));

    s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty()) return;
        const auto code = res.status == 404 ? ErrorCode::not_found : ErrorCode::invalid_request;
        res.set_content(error_body(code, "no such endpoint").dump(), "application/json");
    });
}

int ApiServer::bind(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = server_->bind_to_any_port(host);
    } else if (!server_->bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound <= 0) {
        throw Error(ErrorCode::io_error, "cannot bind " + host + ":" + std::to_string(port));
    }
    return bound;
}

void ApiServer::listen() { server_->listen_after_bind(); }

void ApiServer::stop() { server_->stop(); }

void serve(const Config& config) {
    Engine engine(config);
    ApiServer server(engine);
    const int port = server.bind(config.host, config.port);
    std::cerr << "seeker listening on " << config.host << ":" << port << '\n';
    server.listen();
}

}  // namespace seeker
