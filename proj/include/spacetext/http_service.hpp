#pragma once

#include <memory>
#include <string>

#include "spacetext/engine.hpp"

namespace httplib {
class Server;
}

namespace spacetext {

// HTTP front end over an Engine. Every body is the dump() of the JSON the
// matching Engine call returns; errors are {"error": message}.
class HttpService {
 public:
  explicit HttpService(Engine& engine);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Returns the bound port (port 0 picks a free one). Throws DataError when
  // the address cannot be bound.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void stop();
  bool running() const;

 private:
  Engine& engine_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace spacetext
