#pragma once

#include <memory>
#include <string>

#include "seeker/engine.hpp"

namespace httplib {
class Server;
}

namespace seeker {

/// /v1 endpoints over an Engine. Every response body is JSON; errors are
/// {"code", "message"}.
class ApiServer {
  public:
    explicit ApiServer(Engine& engine);
    ~ApiServer();

    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Binds host:port (port 0 picks a free one). Throws Error(io_error) when the port
    /// cannot be bound. Returns the bound port.
    int bind(const std::string& host, int port);

    /// Blocks until stop() is called.
    void listen();
    void stop();

  private:
    void routes();

    Engine& engine_;
    std::unique_ptr<httplib::Server> server_;
};

/// Builds an Engine from `config` and serves until the process is stopped.
/// Throws Error on startup failure.
void serve(const Config& config);

}  // namespace seeker
