#include "http_api.hpp"

#include "rcanav/error.hpp"
#include "rcanav/rcf_io.hpp"

#include <spdlog/spdlog.h>

namespace rcanav::http {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::syntax, std::string("request body is not JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) {
    throw Error(ErrorCode::invalid_request, std::string("missing field '") + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::invalid_request, std::string("field '") + key + "' has the wrong type");
  }
}

// "support:exists,..." or [{"relation": "support", "operator": "∃"}, ...]
Strategy strategy_from(const json& body) {
  auto it = body.find("strategy");
  if (it == body.end() || it->is_null()) return {};
  if (it->is_string()) return parse_strategy(it->get<std::string>());
  if (!it->is_array()) throw Error(ErrorCode::invalid_strategy, "strategy must be a string or list");
  Strategy out;
  for (const auto& entry : *it) {
    ScalingOperator op;
    if (!entry.is_object() || !entry.contains("relation") || !entry.contains("operator") ||
        !entry["relation"].is_string() || !entry["operator"].is_string() ||
        !parse_operator(entry["operator"].get<std::string>(), op)) {
      throw Error(ErrorCode::invalid_strategy,
                  "strategy entries are {\"relation\": ..., \"operator\": ...}");
    }
    out.insert(StrategyEntry{entry["relation"].get<std::string>(), op});
  }
  return out;
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const std::exception& e) {
      int status = status_for(e);
      if (status >= 500) {
        spdlog::error("{} {}: {}", req.method, req.path, e.what());
      } else {
        spdlog::debug("{} {}: {}", req.method, req.path, e.what());
      }
      reply(res, status, error_json(e));
    }
  };
}

}  // namespace

int status_for(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  if (!err) return 500;
  switch (err->code()) {
    case ErrorCode::unknown_rcf:
    case ErrorCode::unknown_session:
      return 404;
    case ErrorCode::stale_target:
      return 409;
    default:
      return 400;
  }
}

void mount(httplib::Server& server, ExploreService& service) {
  server.Post("/v1/rcf", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                auto id = service.add_rcf(parse_rcf(req.body));
                spdlog::info("loaded {}", id);
                reply(res, 201, json{{"id", id}});
              }));

  server.Get(R"(/v1/rcf/([^/]+)/contexts)",
             guarded([&service](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, service.describe_rcf(req.matches[1]));
             }));

  server.Post("/v1/sessions",
              guarded([&service](const httplib::Request& req, httplib::Response& res) {
                auto body = parse_body(req);
                auto id = service.create_session(field<std::string>(body, "rcf"),
                                                 field<std::string>(body, "context"),
                                                 strategy_from(body));
                spdlog::info("created session {}", id);
                reply(res, 201, json{{"id", id}});
              }));

  server.Post(R"(/v1/sessions/([^/]+)/query)",
              guarded([&service](const httplib::Request& req, httplib::Response& res) {
                auto body = parse_body(req);
                auto attributes = body.contains("attributes")
                                      ? field<std::vector<std::string>>(body, "attributes")
                                      : std::vector<std::string>{};
                reply(res, 200, service.query(req.matches[1], attributes));
              }));

  server.Post(R"(/v1/sessions/([^/]+)/step)",
              guarded([&service](const httplib::Request& req, httplib::Response& res) {
                auto body = parse_body(req);
                reply(res, 200,
                      service.step(req.matches[1],
                                   parse_direction(field<std::string>(body, "direction")),
                                   field<std::string>(body, "target")));
              }));

  server.Get(R"(/v1/sessions/([^/]+)/log)",
             guarded([&service](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, service.log(req.matches[1]));
             }));
}

}  // namespace rcanav::http
