#include "gop/http_server.hpp"

#include "httplib.h"

namespace gop {

namespace {

void send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  for (const auto& [k, v] : api.headers) res.set_header(k, v);
  res.set_content(api.body, api.content_type);
}

QueryParams query(const httplib::Request& req) {
  QueryParams out;
  for (const auto& [k, v] : req.params) out.emplace(k, v);
  return out;
}

}  // namespace

HttpServer::HttpServer(Explorer& explorer)
    : explorer_(explorer), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  s.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    send(res, explorer_.health());
  });
  s.Get("/api/catalog", [this](const httplib::Request&, httplib::Response& res) {
    send(res, explorer_.catalog());
  });
  s.Post("/api/diagram",
         [this](const httplib::Request& req, httplib::Response& res) {
           send(res, explorer_.diagram(req.body));
         });
  s.Get("/api/tooltip/component",
        [this](const httplib::Request& req, httplib::Response& res) {
          send(res, explorer_.component_tooltip(query(req)));
        });
  s.Get("/api/tooltip/link",
        [this](const httplib::Request& req, httplib::Response& res) {
          send(res, explorer_.link_tooltip(query(req)));
        });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                             std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    nlohmann::ordered_json body;
    body["error"]["code"] = "internal";
    body["error"]["field"] = "";
    body["error"]["message"] = message;
    res.status = 500;
    res.set_content(body.dump(), "application/json");
  });

  std::error_code ec;
  const auto& dir = explorer_.config().static_dir;
  if (!dir.empty() && std::filesystem::is_directory(dir, ec)) {
    s.set_mount_point("/", dir.string());
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

bool HttpServer::running() const { return server_->is_running(); }

}  // namespace gop
