#include "spacetext/http_service.hpp"

#include <functional>

#include "httplib.h"
#include "spacetext/error.hpp"

namespace spacetext {

namespace {

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

Json parse_body(const httplib::Request& req) {
  try {
    Json j = Json::parse(req.body);
    if (!j.is_object()) throw DataError("request body must be an object");
    return j;
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("malformed request body: ") + e.what());
  }
}

template <class T>
std::optional<T> optional_field(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  try {
    return j[key].get<T>();
  } catch (const Json::exception&) {
    throw DataError(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T required_field(const Json& j, const char* key) {
  auto v = optional_field<T>(j, key);
  if (!v) throw DataError(std::string("missing field '") + key + "'");
  return *v;
}

std::uint64_t uint_param(const httplib::Request& req, const char* key, std::uint64_t fallback) {
  if (!req.has_param(key)) return fallback;
  const auto s = req.get_param_value(key);
  std::size_t used = 0;
  try {
    if (!s.empty() && s[0] != '-') {
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw DataError(std::string("query parameter '") + key + "' must be a non-negative integer");
}

std::optional<double> double_param(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  const auto s = req.get_param_value(key);
  std::size_t used = 0;
  try {
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DataError(std::string("query parameter '") + key + "' must be a number");
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

// Maps library exceptions onto status codes.
Handler guarded(Handler h) {
  return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const NotFound& e) {
      send(res, 404, Json{{"error", e.what()}});
    } catch (const IoError& e) {
      send(res, 500, Json{{"error", e.what()}});
    } catch (const DataError& e) {
      send(res, 400, Json{{"error", e.what()}});
    } catch (const std::exception& e) {
      send(res, 500, Json{{"error", e.what()}});
    }
  };
}

}  // namespace

HttpService::HttpService(Engine& engine) : engine_(engine), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;

  s.Post("/ask", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    const auto question = required_field<std::string>(body, "question");
    const auto k = optional_field<std::size_t>(body, "k");
    if (k && *k == 0) throw DataError("field 'k' must be positive");
    send(res, 200,
         engine_.ask(question, k, optional_field<std::string>(body, "scope"),
                     optional_field<double>(body, "threshold")));
  }));

  s.Get("/documents", guarded([this](const httplib::Request&, httplib::Response& res) {
    send(res, 200, engine_.documents());
  }));
  s.Get("/documents/:id", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send(res, 200, engine_.document(req.path_params.at("id")));
  }));

  s.Get("/passages/snippets", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send(res, 200, engine_.snippets(uint_param(req, "n", 5), uint_param(req, "seed", 0)));
  }));
  s.Get("/questions/predefined", guarded([this](const httplib::Request&, httplib::Response& res) {
    send(res, 200, engine_.predefined_questions());
  }));

  s.Post("/quiz/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    const auto doc_id = required_field<std::string>(body, "doc_id");
    const auto paths = optional_field<std::vector<std::string>>(body, "section_paths");
    send(res, 201, engine_.create_session(doc_id, paths.value_or(std::vector<std::string>{})));
  }));
  s.Post("/quiz/sessions/:id/selection", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    send(res, 200,
         engine_.select(req.path_params.at("id"), required_field<std::vector<std::string>>(body, "candidate_ids")));
  }));
  s.Post("/quiz/sessions/:id/finalize", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send(res, 200, engine_.finalize(req.path_params.at("id")));
  }));

  s.Get("/novelty/:id", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send(res, 200, engine_.novelty(req.path_params.at("id")));
  }));
  s.Get("/graph", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send(res, 200, engine_.graph(double_param(req, "min_sim")));
  }));
  s.Get("/clusters", guarded([this](const httplib::Request&, httplib::Response& res) {
    send(res, 200, engine_.clusters());
  }));

  s.Post("/feedback", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send(res, 201, engine_.add_feedback(parse_body(req)));
  }));
  s.Get("/feedback", guarded([this](const httplib::Request&, httplib::Response& res) {
    send(res, 200, Json(engine_.feedback()));
  }));

  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send(res, res.status, Json{{"error", httplib::status_message(res.status)}});
  });
}

HttpService::~HttpService() = default;

int HttpService::bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw DataError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpService::listen() { server_->listen_after_bind(); }
void HttpService::stop() { server_->stop(); }
bool HttpService::running() const { return server_->is_running(); }

}  // namespace spacetext
