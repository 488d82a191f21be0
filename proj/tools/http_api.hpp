#pragma once

#include "rcanav/session.hpp"

#include <httplib.h>

namespace rcanav::http {

/// Mounts the /v1 routes on `server`. The service must outlive the server.
void mount(httplib::Server& server, ExploreService& service);

/// HTTP status for an exception raised while handling a request.
int status_for(const std::exception& e);

}  // namespace rcanav::http
