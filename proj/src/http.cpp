#include "setnim/http.hpp"

#include <algorithm>

#include "httplib.h"
#include "setnim/service.hpp"

namespace setnim::http {
namespace {

using service::Json;

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

Json parse_body(const httplib::Request& req) {
  Json body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) fail(ErrorCode::BadRequest, "request body must be a JSON object");
  return body;
}

const Json& field(const Json& body, const char* name) {
  if (!body.contains(name)) fail(ErrorCode::BadRequest, std::string("missing field '") + name + "'");
  return body.at(name);
}

GameSpec game_of(const Json& body) {
  const Json& id = field(body, "game");
  if (!id.is_string()) fail(ErrorCode::BadRequest, "game must be a string");
  return service::resolve_game(id.get<std::string>(), false);
}

// Requests may lower the work budget, never raise it.
service::Options options_of(const Json& body) {
  service::Options o;
  if (body.contains("budget")) {
    const Json& b = body.at("budget");
    if (!b.is_number_unsigned() || b.get<std::uint64_t>() == 0)
      fail(ErrorCode::BadRequest, "budget must be a positive integer");
    o.budget = std::min<std::uint64_t>(b.get<std::uint64_t>(), kDefaultBudget);
  }
  if (body.contains("explain")) {
    if (!body.at("explain").is_boolean()) fail(ErrorCode::BadRequest, "explain must be a boolean");
    o.explain = body.at("explain").get<bool>();
  }
  return o;
}

template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      reply(res, 200, f(req));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BudgetExceeded) res.set_header("Retry-After", "1");
      reply(res, service::http_status(e.code()), service::error_body(e));
    } catch (const std::exception& e) {
      reply(res, 500, Json{{"code", "Internal"}, {"message", e.what()}});
    }
  };
}

}  // namespace

void register_routes(httplib::Server& server) {
  server.Get("/api/games", guarded([](const httplib::Request&) { return service::games(); }));
  server.Post("/api/classify", guarded([](const httplib::Request& req) {
                const Json body = parse_body(req);
                return service::classify(game_of(body), service::position_from(field(body, "position")),
                                         options_of(body));
              }));
  server.Post("/api/solve", guarded([](const httplib::Request& req) {
                const Json body = parse_body(req);
                return service::solve(game_of(body), service::position_from(field(body, "position")),
                                      options_of(body));
              }));
  server.Post("/api/legal", guarded([](const httplib::Request& req) {
                const Json body = parse_body(req);
                return service::legal(game_of(body), service::position_from(field(body, "position")),
                                      service::move_from(field(body, "move")));
              }));
  server.Post("/api/apply", guarded([](const httplib::Request& req) {
                const Json body = parse_body(req);
                return service::apply(game_of(body), service::position_from(field(body, "position")),
                                      service::move_from(field(body, "move")));
              }));
  server.Post("/api/legal-sets", guarded([](const httplib::Request& req) {
                return service::legal_sets(game_of(parse_body(req)));
              }));
}

bool serve(const std::string& host, int port) {
  httplib::Server server;
  register_routes(server);
  return server.listen(host, port);
}

}  // namespace setnim::http
