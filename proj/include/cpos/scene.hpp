#pragma once

#include "cpos/io.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cpos {

/// Layer names in drawing order.
inline constexpr std::array<std::string_view, 11> scene_features{
    "nchords_map", "diagonals", "midparallels", "equidistant", "ess", "pd", "area_parallel", "rass", "css", "ae", "n_points"};

struct SceneRequest {
    std::vector<std::string> features; // a subset of scene_features, in their order
    std::optional<Rational> t, level;
    std::optional<Rational> mu; // absent: choose automatically
};

/// Comma-separated feature list, deduplicated and put into drawing order.
inline std::vector<std::string> parse_features(std::string_view csv)
{
    std::vector<bool> want(scene_features.size(), false);
    while (!csv.empty()) {
        auto comma = csv.find(',');
        std::string_view name = csv.substr(0, comma);
        csv = comma == std::string_view::npos ? std::string_view{} : csv.substr(comma + 1);
        if (name.empty()) continue;
        auto it = std::find(scene_features.begin(), scene_features.end(), name);
        if (it == scene_features.end()) throw ParseError("unknown feature '" + std::string(name) + "'");
        want[static_cast<std::size_t>(it - scene_features.begin())] = true;
    }
    std::vector<std::string> out;
    for (std::size_t k = 0; k < want.size(); ++k)
        if (want[k]) out.emplace_back(scene_features[k]);
    return out;
}

inline Rational resolve_mu(const CposPolygon& p, const std::optional<Rational>& mu) { return mu ? *mu : choose_convex_mu(p); }

/// One layer; refusals propagate as GeometryError.
inline Json layer_json(const CposPolygon& p, std::string_view feature, const SceneRequest& req)
{
    auto need = [&](const std::optional<Rational>& v, const char* name) -> const Rational& {
        if (!v) throw ParseError(std::string(feature) + " needs the parameter " + name);
        return *v;
    };
    if (feature == "ae") return chain_json(area_evolute(p));
    if (feature == "css") return chain_json(central_symmetry_set(p));
    if (feature == "diagonals") return diagonals_json(p);
    if (feature == "midparallels") return midparallels_json(p);
    if (feature == "equidistant") return equidistant_json(p, need(req.t, "t"));
    if (feature == "ess") return ess_json(ess_trace(p));
    if (feature == "pd") return pd_json(p, resolve_mu(p, req.mu));
    if (feature == "n_points") return n_points_json(p);
    if (feature == "area_parallel") return area_parallel_json(p, need(req.level, "level"));
    if (feature == "rass") return rass_json(p);
    if (feature == "nchords_map") return nchords_map_json(p);
    throw ParseError("unknown feature '" + std::string(feature) + "'");
}

/// Every requested layer is present; a layer that the geometry refuses holds
/// the diagnostic instead of data.
inline Json scene_json(const CposPolygon& p, const SceneRequest& req)
{
    Json params = Json::object();
    if (req.t) params["t"] = to_json(*req.t);
    if (req.level) params["level"] = to_json(*req.level);
    params["mu"] = req.mu ? to_json(*req.mu) : Json("auto");
    Json layers = Json::object();
    for (const auto& f : req.features) {
        try {
            layers[f] = layer_json(p, f, req);
        } catch (const GeometryError& e) {
            layers[f] = error_json(e);
        }
    }
    return Json{{"polygon", polygon_json(p)}, {"features", req.features}, {"params", params}, {"layers", layers}};
}

} // namespace cpos
