#pragma once

#include <string>

namespace httplib {
class Server;
}

namespace clusterq::http {

/// Installs the /api routes on `server`.
void install_routes(httplib::Server& server);

/// Blocks serving on host:port. Returns nonzero when the socket cannot be bound.
int serve(const std::string& host, int port);

}  // namespace clusterq::http
