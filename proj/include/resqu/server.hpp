#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace resqu {

class SessionService;

/// Mounts the /api/sessions endpoints on the server. Errors are returned as
/// {"error": message} with status 400, 404, 409 or 500.
void register_routes(httplib::Server& server, SessionService& service);

/// Blocks serving until the server is stopped.
bool serve(SessionService& service, const std::string& host, int port,
           const std::optional<std::filesystem::path>& static_dir = std::nullopt);

}  // namespace resqu
