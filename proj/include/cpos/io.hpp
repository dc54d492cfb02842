#pragma once

#include "cpos/area_parallels.hpp"
#include "cpos/midpoint_chords.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpos {

using Json = nlohmann::ordered_json;

/// Malformed input: not JSON, wrong shape, or a number that is not a rational.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Json to_json(const Rational& r) { return r.str(); }
inline Json to_json(const Point& p) { return Json::array({p.x.str(), p.y.str()}); }

inline Json to_json(const std::vector<Point>& pts)
{
    Json out = Json::array();
    for (const auto& p : pts) out.push_back(to_json(p));
    return out;
}

inline Json to_json(const std::vector<Rational>& xs)
{
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_json(x));
    return out;
}

inline Json to_json(const Segment& s) { return Json::array({to_json(s.a), to_json(s.b)}); }

inline Rational parse_rational(std::string_view text)
{
    try {
        return Rational::parse(text);
    } catch (const std::logic_error& e) {
        throw ParseError(e.what());
    }
}

/// Rationals arrive as "p/q" or decimal strings, or as JSON integers. JSON
/// floats are refused so that no value is silently rounded.
inline Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer()) return parse_rational(j.dump());
    if (!j.is_string()) throw ParseError("expected a rational as a string or integer, got " + j.dump());
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::logic_error& e) {
        throw ParseError(e.what());
    }
}

inline Point point_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2) throw ParseError("expected a point [x, y], got " + j.dump());
    return {rational_from_json(j[0]), rational_from_json(j[1])};
}

/// "x,y" as typed on a command line.
inline Point parse_point(std::string_view text)
{
    auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected x,y: '" + std::string(text) + "'");
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

inline Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline std::vector<Point> vertices_from_json(const Json& doc)
{
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw ParseError("expected an object with a \"vertices\" array");
    std::vector<Point> pts;
    for (const auto& v : doc["vertices"]) pts.push_back(point_from_json(v));
    return pts;
}

/// Parses and validates; shape problems throw ParseError, geometry problems GeometryError.
inline CposPolygon polygon_from_json(const Json& doc) { return validate(vertices_from_json(doc)); }

inline Json polygon_json(const CposPolygon& p) { return Json{{"vertices", to_json(p.vertices())}}; }

inline Json error_json(const GeometryError& e)
{
    Json err{{"kind", std::string(to_string(e.kind()))}};
    if (e.index()) err["index"] = *e.index();
    err["message"] = e.what();
    return Json{{"error", err}};
}

inline Json validation_json(const CposPolygon& p) { return Json{{"valid", true}, {"n", p.n()}}; }

inline Json flags_json(const std::vector<bool>& flags)
{
    Json out = Json::array();
    for (bool b : flags) out.push_back(b);
    return out;
}

inline Json chain_json(const PolyChain& c)
{
    if (c.is_point()) return Json{{"points", to_json(c.points)}, {"degenerate", "point"}};
    Json out{{"points", to_json(c.points)}, {"closed", c.closed}};
    if (c.withheld)
        out["withheld"] = std::string(to_string(*c.withheld));
    else
        out["cusps"] = flags_json(c.cusps);
    return out;
}

inline Json diagonals_json(const CposPolygon& p)
{
    Json segs = Json::array();
    for (int i = 1; i <= p.n(); ++i) segs.push_back(to_json(Segment{p.vertex(i), p.vertex(i + p.n())}));
    return Json{{"segments", segs}};
}

/// The part of each mid-parallel inside the polygon: the midpoints of chords
/// between the parallel edges i and i+n.
inline Json midparallels_json(const CposPolygon& p)
{
    Json segs = Json::array();
    for (int i = 1; i <= p.n(); ++i)
        segs.push_back(to_json(Segment{midpoint(p.vertex(i + 1), p.vertex(i + p.n())),
                                       midpoint(p.vertex(i), p.vertex(i + p.n() + 1))}));
    return Json{{"segments", segs}};
}

inline Json equidistant_json(const CposPolygon& p, const Rational& t)
{
    auto e = equidistant(p, t);
    return Json{{"t", to_json(t)},
                {"points", to_json(e.points)},
                {"closed", true},
                {"cusps", flags_json(e.cusps)},
                {"self_intersections", to_json(equidistant_self_intersections(p, t))}};
}

inline Json ess_json(const std::vector<EssBranch>& branches)
{
    Json out = Json::array();
    for (const auto& br : branches) {
        Json segs = Json::array();
        for (std::size_t k = 0; k < br.segments.size(); ++k) {
            const auto& s = br.segments[k];
            auto kind_at = [&](bool start) -> Json {
                const bool first = start && k == 0, last = !start && k + 1 == br.segments.size();
                if (first || last) {
                    if (br.closed) return "Closure";
                    auto e = br.endpoints[first ? 0 : 1];
                    return e ? Json(to_string(*e)) : Json(nullptr);
                }
                const auto& j = br.junctions[start ? k - 1 : k];
                return j.cusp ? "CuspJunction" : "Junction";
            };
            segs.push_back(Json{{"pair", Json::array({s.a, s.b})},
                                {"t_range", Json::array({to_json(s.t_from), to_json(s.t_to)})},
                                {"points", to_json(s.seg)},
                                {"endpoint_kinds", Json::array({kind_at(true), kind_at(false)})}});
        }
        out.push_back(segs);
    }
    return Json{{"branches", out}};
}

/// Q as a polygon document plus the recurrence trace.
inline Json pd_json(const CposPolygon& p, const Rational& mu)
{
    auto tr = pd_transform(p, mu);
    bool convex = true;
    try {
        tr.q_polygon();
    } catch (const GeometryError&) {
        convex = false;
    }
    return Json{{"vertices", to_json(tr.q)},
                {"mu", to_json(mu)},
                {"convex", convex},
                {"trace", Json{{"mu_seq", to_json(tr.mu_seq)}, {"N", to_json(half_area_midpoints(p))}}}};
}

inline Json n_points_json(const CposPolygon& p) { return Json{{"points", to_json(half_area_midpoints(p))}}; }

inline Json nchords_map_json(const CposPolygon& p)
{
    Json faces = Json::array();
    for (const auto& f : nchords_faces(p)) faces.push_back(Json{{"polygon", to_json(f.polygon)}, {"count", f.count}});
    return Json{{"faces", faces}};
}

/// Display-only samples of the true hyperbola arc behind each rectified piece.
inline constexpr int arc_samples = 8;

inline Json area_parallel_json(const CposPolygon& p, const Rational& level)
{
    auto rp = rectified_parallel(p, level);
    auto on_ae = on_area_evolute(p, rp);
    Json chains = Json::array();
    for (std::size_t c = 0; c < rp.chains.size(); ++c) {
        Json pieces = Json::array();
        for (const auto& l : rp.pieces[c]) {
            Json piece{{"cell", Json::array({l.i, l.j})}, {"segment", to_json(l.seg)}};
            if (l.degenerate) {
                // The level set of a degenerate cell is the straight segment itself.
                piece["regime"] = nullptr;
                piece["arc_approximate"] = nullptr;
            } else {
                Json arc = Json::array();
                for (auto [x, y] : hyperbola_arc_samples(p, l, arc_samples)) arc.push_back(Json::array({x, y}));
                piece["regime"] = std::string(to_string(classify_L_segment(p, l).regime));
                piece["arc_approximate"] = arc;
            }
            pieces.push_back(piece);
        }
        Json chain = chain_json(rp.chains[c]);
        chain["on_area_evolute"] = flags_json(on_ae[c]);
        chain["encloses_area_evolute"] = encloses_area_evolute(p, rp.chains[c]);
        chain["pieces"] = pieces;
        chains.push_back(chain);
    }
    Json crossings;
    try {
        crossings = to_json(rp.self_intersections());
    } catch (const GeometryError& e) {
        // Overlapping pieces (the half level runs through the N points twice) have no finite crossing set.
        crossings = error_json(e);
    }
    return Json{{"level", to_json(level)}, {"chains", chains}, {"self_intersections", crossings}};
}

inline Json certificate_json(const AlmostSymmetryCertificate& c)
{
    return Json{{"mu0", to_json(c.mu0)},
                {"q", polygon_json(c.q)},
                {"ae_inside", c.ae_inside},
                {"one_diagonal_midpoints_outside", c.one_diag_midpoints_outside}};
}

inline Json almost_symmetry_json(const CposPolygon& p)
{
    auto cert = almost_symmetry(p);
    Json out{{"almost_symmetric", cert.has_value()}};
    out["certificate"] = cert ? certificate_json(*cert) : Json(nullptr);
    out["one_diagonal_midpoints"] = to_json(one_diagonal_midpoints(p));
    return out;
}

inline Json rass_json(const CposPolygon& p)
{
    auto rep = rass(p);
    return Json{{"certificate", certificate_json(rep.certificate)},
                {"branches", ess_json(rep.branches)["branches"]},
                {"one_diagonal_midpoints", to_json(one_diagonal_midpoints(p))},
                {"levels", to_json(rep.levels)},
                {"checked_points", rep.checked_points},
                {"stray_points", to_json(rep.stray_points)},
                {"consistent", rep.consistent()}};
}

} // namespace cpos
