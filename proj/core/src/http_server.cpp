#include "ecoprompt/http_server.hpp"

#include <httplib.h>

namespace ecoprompt {

using nlohmann::json;

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::validation:
    case ErrorCode::malformed: return 422;
    case ErrorCode::provider_unavailable:
    case ErrorCode::provider_auth:
    case ErrorCode::provider_timeout:
    case ErrorCode::provider_error: return 502;
    case ErrorCode::io:
    case ErrorCode::config: return 500;
    default: return 409;
  }
}

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) {
    // httplib defaults to SO_REUSEPORT, which lets a second server share a busy port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
  }

  void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
    send(res, http_status(code), json{{"error", to_string(code)}, {"message", message}});
  }

  static json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json();
    json j = json::parse(req.body, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::malformed, "request body is not valid JSON");
    return j;
  }

  template <class F>
  httplib::Server::Handler wrap(int ok_status, F f) {
    return [this, ok_status, f](const httplib::Request& req, httplib::Response& res) {
      try {
        send(res, ok_status, f(req));
      } catch (const Error& e) {
        send_error(res, e.code(), e.what());
      } catch (const json::exception& e) {
        send_error(res, ErrorCode::malformed, e.what());
      }
    };
  }

  void routes(const std::optional<std::filesystem::path>& static_dir) {
    const std::string origin = service.config().service.cors_origin;
    server.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
    server.set_exception_handler(
        [this](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception& e) {
            send(res, 500, json{{"error", "internal"}, {"message", e.what()}});
          } catch (...) {
            send(res, 500, json{{"error", "internal"}, {"message", "unknown error"}});
          }
        });

    server.Get("/api/health", wrap(200, [this](const auto&) { return service.health(); }));

    server.Post("/api/sessions", wrap(201, [this](const auto& req) {
                  return service.create_session(parse_body(req));
                }));
    server.Get("/api/sessions/:id", wrap(200, [this](const auto& req) {
                 return service.get_session(req.path_params.at("id"));
               }));
    server.Delete("/api/sessions/:id", wrap(200, [this](const auto& req) {
                    const std::string& id = req.path_params.at("id");
                    service.delete_session(id);
                    return json{{"session_id", id}, {"deleted", true}};
                  }));
    server.Post("/api/sessions/:id/prompt", wrap(200, [this](const auto& req) {
                  return service.prompt(req.path_params.at("id"), parse_body(req));
                }));
    server.Put("/api/sessions/:id/limits", wrap(200, [this](const auto& req) {
                 return service.set_limits(req.path_params.at("id"), parse_body(req));
               }));

    server.Post("/api/games", wrap(201, [this](const auto& req) {
                  return service.create_game(parse_body(req));
                }));
    server.Get("/api/games/:id/state", wrap(200, [this](const auto& req) {
                 return service.game_state(req.path_params.at("id"));
               }));
    server.Post("/api/games/:id/actions", wrap(200, [this](const auto& req) {
                  return service.game_action(req.path_params.at("id"), parse_body(req));
                }));

    if (static_dir) server.set_mount_point("/", static_dir->string());
  }
};

HttpServer::HttpServer(Service& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  impl_->routes(static_dir);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::io, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::io, "cannot bind " + host + ":" + std::to_string(port) +
                                   " (port in use?)");
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace ecoprompt
