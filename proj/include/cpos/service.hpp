#pragma once

#include "cpos/projection.hpp"
#include "cpos/scene.hpp"
#include "cpos/svg.hpp"

#include "httplib.h"

#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace cpos {

inline constexpr const char* version = "1.0.0";

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// FNV-1a over the canonical polygon document, as 16 hex digits.
inline std::string snapshot_id(const CposPolygon& p)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : polygon_json(p).dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Scene parameters from query strings: features=..., t=, level=, mu= (or mu=auto).
inline SceneRequest scene_request(const std::map<std::string, std::string>& query)
{
    SceneRequest req;
    auto get = [&](const char* key) -> const std::string* {
        auto it = query.find(key);
        return it == query.end() ? nullptr : &it->second;
    };
    if (auto f = get("features")) req.features = parse_features(*f);
    if (auto t = get("t")) req.t = parse_rational(*t);
    if (auto a = get("level")) req.level = parse_rational(*a);
    if (auto mu = get("mu"); mu && *mu != "auto") req.mu = parse_rational(*mu);
    return req;
}

/// The HTTP API without the transport. Snapshots are immutable and only ever
/// added; everything else is computed per request.
class Service {
public:
    Response handle(std::string_view method, std::string_view path, const std::map<std::string, std::string>& query,
                    std::string_view body)
    {
        try {
            return route(method, path, query, body);
        } catch (const GeometryError& e) {
            return {422, error_json(e).dump()};
        } catch (const std::invalid_argument& e) {
            return failure(400, "MalformedInput", e.what());
        } catch (const nlohmann::json::exception& e) {
            return failure(400, "MalformedInput", e.what());
        }
    }

    std::string store(const CposPolygon& p)
    {
        std::string id = snapshot_id(p);
        std::lock_guard lock(mutex_);
        snapshots_.emplace(id, p);
        return id;
    }

    std::optional<CposPolygon> find(const std::string& id) const
    {
        std::lock_guard lock(mutex_);
        auto it = snapshots_.find(id);
        if (it == snapshots_.end()) return std::nullopt;
        return it->second;
    }

private:
    static Response failure(int status, const char* kind, const std::string& message)
    {
        return {status, Json{{"error", Json{{"kind", kind}, {"message", message}}}}.dump()};
    }

    Response route(std::string_view method, std::string_view path, const std::map<std::string, std::string>& query,
                   std::string_view body)
    {
        auto tail = [&](std::string_view prefix) -> std::optional<std::string> {
            if (path.substr(0, prefix.size()) != prefix || path.size() == prefix.size()) return std::nullopt;
            return std::string(path.substr(prefix.size()));
        };
        if (method == "GET" && path == "/api/health")
            return {200, Json{{"name", "cpos"}, {"version", version}}.dump()};
        if (method == "POST" && path == "/api/polygon") {
            auto p = polygon_from_json(parse_json(body));
            return {200, Json{{"id", store(p)}}.dump()};
        }
        if (method == "POST" && path == "/api/project") return project(parse_json(body));
        if (method == "GET") {
            if (auto id = tail("/api/scene/")) {
                auto p = find(*id);
                if (!p) return failure(404, "UnknownSnapshot", "no snapshot " + *id);
                return {200, scene_json(*p, scene_request(query)).dump()};
            }
            if (auto id = tail("/api/svg/")) {
                auto p = find(*id);
                if (!p) return failure(404, "UnknownSnapshot", "no snapshot " + *id);
                return {200, render_svg(scene_json(*p, scene_request(query))), "image/svg+xml"};
            }
        }
        return failure(404, "UnknownRoute", std::string(method) + " " + std::string(path));
    }

    Response project(const Json& req)
    {
        if (!req.is_object() || !req.contains("id") || !req["id"].is_string() || !req.contains("vertex")
            || !req["vertex"].is_number_integer() || !req.contains("target"))
            throw ParseError("expected {\"id\": ..., \"vertex\": k, \"target\": [x, y]}");
        auto p = find(req["id"].get<std::string>());
        if (!p) return failure(404, "UnknownSnapshot", "no snapshot " + req["id"].get<std::string>());
        const int k = req["vertex"].get<int>();
        if (k < 1 || k > p->size()) throw ParseError("vertex index out of range 1.." + std::to_string(p->size()));
        auto proj = project_vertex(*p, k, point_from_json(req["target"]));
        return {200, Json{{"id", store(proj.polygon)},
                          {"polygon", polygon_json(proj.polygon)},
                          {"clamped", proj.clamped},
                          {"reached", to_json(proj.reached)}}
                         .dump()};
    }

    mutable std::mutex mutex_;
    std::map<std::string, CposPolygon> snapshots_;
};

/// Routes /api/* on an httplib server to the service.
inline void mount(httplib::Server& server, Service& service)
{
    auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> query;
        for (const auto& [k, v] : req.params) query.emplace(k, v);
        auto r = service.handle(req.method, req.path, query, req.body);
        res.status = r.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_content(r.body, r.content_type);
    };
    server.Get(R"(/api/.*)", handler);
    server.Post(R"(/api/.*)", handler);
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
}

/// Blocks serving the API on host:port.
inline bool serve(Service& service, const std::string& host, int port)
{
    httplib::Server server;
    mount(server, service);
    return server.listen(host, port);
}

} // namespace cpos
