#include "http_server.hpp"

#include <httplib.h>

#include <iostream>

#include "clusterq/service.hpp"

namespace clusterq::http {

namespace {

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void run(const std::string& op, const json& request, httplib::Response& res) {
    try {
        reply(res, 200, service::handle(op, request));
    } catch (...) {
        auto f = service::describe(std::current_exception());
        reply(res, f.http_status, f.body);
    }
}

json endpoint_listing() {
    json paths = json::object();
    for (const auto& op : service::operations()) {
        if (op == "catalog") continue;
        paths["/api/" + op] = {{"method", "POST"}, {"body", "application/json"}};
    }
    paths["/api/catalog"] = {{"method", "GET"}};
    paths["/api/catalog/{name}"] = {{"method", "GET"}};
    return {{"service", "clusterq"}, {"paths", paths}};
}

}  // namespace

void install_routes(httplib::Server& server) {
    server.Get("/api", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, endpoint_listing()); });
    server.Get("/api/catalog", [](const httplib::Request&, httplib::Response& res) { run("catalog", json::object(), res); });
    server.Get(R"(/api/catalog/([A-Za-z0-9_@]+))", [](const httplib::Request& req, httplib::Response& res) {
        run("catalog", {{"name", req.matches[1].str()}}, res);
    });
    for (const auto& op : service::operations()) {
        if (op == "catalog") continue;
        server.Post("/api/" + op, [op](const httplib::Request& req, httplib::Response& res) {
            json body;
            try {
                body = json::parse(req.body);
            } catch (const json::exception& e) {
                reply(res, 400, {{"error", {{"code", "PayloadError"}, {"message", e.what()}}}});
                return;
            }
            run(op, body, res);
        });
    }
}

int serve(const std::string& host, int port) {
    httplib::Server server;
    install_routes(server);
    if (!server.bind_to_port(host, port)) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return 1;
    }
    std::cerr << "listening on http://" << host << ":" << port << "\n";
    server.listen_after_bind();
    return 0;
}

}  // namespace clusterq::http
