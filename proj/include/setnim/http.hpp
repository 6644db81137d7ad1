#pragma once

#include <string>

namespace httplib {
class Server;
}

namespace setnim::http {

// GET /api/games; POST /api/classify, /api/solve, /api/legal, /api/apply,
// /api/legal-sets. Bodies and replies are JSON; errors carry {code, message}.
void register_routes(httplib::Server& server);

// Binds host:port and blocks until the server stops. False if binding fails.
bool serve(const std::string& host, int port);

}  // namespace setnim::http
