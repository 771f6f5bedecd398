#pragma once

#include <memory>
#include <string>

#include "gop/service.hpp"

namespace httplib {
class Server;
}

namespace gop {

// HTTP/1.1 front end over an Explorer. Static files are served from
// config.static_dir at / when that directory exists.
class HttpServer {
 public:
  explicit HttpServer(Explorer& explorer);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without serving. Port 0 picks a free port. Returns the bound port
  // or -1 on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(); call after bind().
  bool listen();
  void stop();
  bool running() const;

 private:
  Explorer& explorer_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace gop
