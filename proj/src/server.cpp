#include "resqu/server.hpp"

#include "httplib.h"
#include "resqu/error.hpp"
#include "resqu/session.hpp"

namespace resqu {

using json = nlohmann::json;

namespace {

void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

json body_of(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    try {
        return json::parse(req.body);
    } catch (const json::exception&) {
        throw ServiceError(400, "request body is not valid JSON");
    }
}

template <class Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const ServiceError& e) {
            send(res, e.status(), {{"error", e.what()}});
        } catch (const Error& e) {
            send(res, 400, {{"error", e.what()}});
        } catch (const std::exception& e) {
            send(res, 500, {{"error", e.what()}});
        }
    };
}

}  // namespace

void register_routes(httplib::Server& server, SessionService& service) {
    server.Post("/api/sessions", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                    send(res, 201, service.create(body_of(req)));
                }));
    server.Get(R"(/api/sessions/([^/]+)/next)", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                   send(res, 200, service.next(req.matches[1]));
               }));
    server.Post(R"(/api/sessions/([^/]+)/responses)",
                guarded([&service](const httplib::Request& req, httplib::Response& res) {
                    send(res, 200, service.respond(req.matches[1], body_of(req)));
                }));
    server.Post(R"(/api/sessions/([^/]+)/questionnaire)",
                guarded([&service](const httplib::Request& req, httplib::Response& res) {
                    send(res, 200, service.questionnaire(req.matches[1], body_of(req)));
                }));
    server.Get(R"(/api/sessions/([^/]+)/report)", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                   send(res, 200, service.report(req.matches[1]));
               }));
}

bool serve(SessionService& service, const std::string& host, int port,
           const std::optional<std::filesystem::path>& static_dir) {
    httplib::Server server;
    register_routes(server, service);
    if (static_dir) server.set_mount_point("/", static_dir->string());
    return server.listen(host, port);
}

}  // namespace resqu
