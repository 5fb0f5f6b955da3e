#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ecoprompt/error.hpp"
#include "ecoprompt/service.hpp"

namespace ecoprompt {

/// HTTP status for an error code: 404 not found, 422 validation/malformed,
/// 502 provider failures, 500 I/O, 409 for everything else.
int http_status(ErrorCode code) noexcept;

/// JSON/HTTP front end for a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service,
                      std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; returns the bound port (pass 0 for an ephemeral one).
  /// Throws Error(io) if the port is unavailable.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ecoprompt
