#pragma once

#include <string>

#include "critters/service/game_service.hpp"

namespace httplib {
class Server;
}

namespace critters::service {

// Routes every /api request on `server` to `service`.
void mount(httplib::Server& server, GameService& service);

// Blocks until the server stops. Returns false if the port could not be bound.
bool serve(GameService& service, const std::string& host, int port);

}  // namespace critters::service
