#pragma once

#include "cpos/scene.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cpos {

namespace svg_detail {

using XY = std::pair<double, double>;

inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline XY xy(const Json& pt)
{
    if (pt[0].is_number()) return {pt[0].get<double>(), pt[1].get<double>()};
    return {rational_from_json(pt[0]).to_double(), rational_from_json(pt[1]).to_double()};
}

inline std::vector<XY> xys(const Json& pts)
{
    std::vector<XY> out;
    for (const auto& p : pts) out.push_back(xy(p));
    return out;
}

class Canvas {
public:
    Canvas(const std::vector<XY>& extent, double width) : width_(width)
    {
        double x0 = std::numeric_limits<double>::max(), y0 = x0, x1 = -x0, y1 = -x0;
        for (auto [x, y] : extent) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
        const double span = std::max({x1 - x0, y1 - y0, 1e-9});
        scale_ = (width - 2 * margin) / span;
        x0_ = x0;
        y1_ = y1;
        height_ = (y1 - y0) * scale_ + 2 * margin;
    }

    double width() const { return width_; }
    double height() const { return height_; }

    std::string pt(XY p) const { return num(margin + (p.first - x0_) * scale_) + "," + num(margin + (y1_ - p.second) * scale_); }
    std::string x(XY p) const { return num(margin + (p.first - x0_) * scale_); }
    std::string y(XY p) const { return num(margin + (y1_ - p.second) * scale_); }

    std::string points(const std::vector<XY>& ps) const
    {
        std::string s;
        for (std::size_t k = 0; k < ps.size(); ++k) s += (k ? " " : "") + pt(ps[k]);
        return s;
    }

private:
    static constexpr double margin = 24;
    double width_, height_ = 0, scale_ = 1, x0_ = 0, y1_ = 0;
};

class Writer {
public:
    explicit Writer(const Canvas& c) : c_(c) {}

    void open(const std::string& id) { out_ << "<g id=\"" << id << "\">\n"; }
    void close() { out_ << "</g>\n"; }

    void poly(const std::vector<XY>& ps, bool closed, const std::string& style)
    {
        if (ps.size() == 1) return dot(ps[0], 3, style);
        out_ << '<' << (closed ? "polygon" : "polyline") << " points=\"" << c_.points(ps) << "\" " << style << "/>\n";
    }
    void line(XY a, XY b, const std::string& style)
    {
        out_ << "<line x1=\"" << c_.x(a) << "\" y1=\"" << c_.y(a) << "\" x2=\"" << c_.x(b) << "\" y2=\"" << c_.y(b) << "\" "
             << style << "/>\n";
    }
    void dot(XY p, double r, const std::string& style)
    {
        out_ << "<circle cx=\"" << c_.x(p) << "\" cy=\"" << c_.y(p) << "\" r=\"" << num(r) << "\" " << style << "/>\n";
    }
    void raw(const std::string& s) { out_ << s; }
    std::string str() const { return out_.str(); }

private:
    const Canvas& c_;
    std::ostringstream out_;
};

inline std::string stroke(const char* colour, double w, const char* extra = "")
{
    return std::string("fill=\"none\" stroke=\"") + colour + "\" stroke-width=\"" + num(w) + "\"" + (*extra ? " " : "") + extra;
}

inline std::string fill(const char* colour) { return std::string("fill=\"") + colour + "\" stroke=\"none\""; }

inline void chain(Writer& w, const Json& c, const char* colour, double width)
{
    auto pts = xys(c["points"]);
    w.poly(pts, c.value("closed", true), stroke(colour, width));
    if (c.contains("cusps"))
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (c["cusps"][k].get<bool>()) w.dot(pts[k], 3.5, fill(colour));
}

inline void segments(Writer& w, const Json& segs, const std::string& style)
{
    for (const auto& s : segs) w.line(xy(s[0]), xy(s[1]), style);
}

inline void branches(Writer& w, const Json& brs, const char* colour)
{
    for (const auto& br : brs)
        for (const auto& s : br) w.line(xy(s["points"][0]), xy(s["points"][1]), stroke(colour, 2.5, "stroke-linecap=\"round\""));
}

inline const char* face_colour(int count)
{
    static const char* palette[] = {"#f7fbff", "#c6dbef", "#6baed6", "#2171b5", "#08306b"};
    return palette[std::clamp((count - 1) / 2, 0, 4)];
}

} // namespace svg_detail

/// Deterministic SVG 1.1 drawing of a scene document. Coordinates are decimal
/// roundings for display; exact values live in the JSON.
inline std::string render_svg(const Json& scene, double width = 800)
{
    using namespace svg_detail;
    const Json& layers = scene["layers"];
    std::vector<XY> extent = xys(scene["polygon"]["vertices"]);
    auto grow = [&](const Json& pts) {
        for (auto p : xys(pts)) extent.push_back(p);
    };
    if (layers.contains("pd") && layers["pd"].contains("vertices")) grow(layers["pd"]["vertices"]);
    if (layers.contains("rass") && layers["rass"].contains("certificate"))
        grow(layers["rass"]["certificate"]["q"]["vertices"]);
    const Canvas c(extent, width);
    Writer w(c);

    std::vector<std::string> refusals;
    auto draw_polygon = [&] {
        w.open("polygon");
        w.poly(xys(scene["polygon"]["vertices"]), true, stroke("black", 2));
        w.close();
    };
    bool polygon_drawn = false;
    for (const auto& f : scene["features"]) {
        const std::string name = f.get<std::string>();
        if (!polygon_drawn && name != "nchords_map") {
            draw_polygon();
            polygon_drawn = true;
        }
        const Json& l = layers[name];
        if (l.contains("error")) {
            refusals.push_back(name + ": " + l["error"]["kind"].get<std::string>());
            continue;
        }
        w.open(name);
        if (name == "nchords_map") {
            for (const auto& face : l["faces"]) {
                int n = face["count"].get<int>();
                w.raw("<polygon points=\"" + c.points(xys(face["polygon"])) + "\" " + fill(face_colour(n)) + " data-count=\""
                      + std::to_string(n) + "\"/>\n");
            }
        } else if (name == "diagonals") {
            segments(w, l["segments"], stroke("#777777", 1, "stroke-dasharray=\"6 4\""));
        } else if (name == "midparallels") {
            segments(w, l["segments"], stroke("#999999", 1, "stroke-dasharray=\"2 3\""));
        } else if (name == "equidistant") {
            chain(w, l, "#2e8b57", 1.5);
        } else if (name == "ess") {
            branches(w, l["branches"], "#7d3c98");
        } else if (name == "pd") {
            w.poly(xys(l["vertices"]), true, stroke("#e67e22", 1.5));
            for (auto p : xys(l["trace"]["N"])) w.dot(p, 2.5, fill("#e67e22"));
        } else if (name == "area_parallel") {
            for (const auto& ch : l["chains"]) {
                chain(w, ch, "#16a085", 1.5);
                for (const auto& piece : ch["pieces"])
                    if (!piece["arc_approximate"].is_null())
                        w.poly(xys(piece["arc_approximate"]), false,
                               stroke("#16a085", 1, "stroke-dasharray=\"3 2\" opacity=\"0.6\" class=\"approximate\""));
            }
        } else if (name == "rass") {
            w.poly(xys(l["certificate"]["q"]["vertices"]), true, stroke("#d35400", 1, "stroke-dasharray=\"5 3\""));
            branches(w, l["branches"], "#8e44ad");
            for (auto p : xys(l["one_diagonal_midpoints"])) w.dot(p, 4, stroke("black", 1));
        } else if (name == "css") {
            chain(w, l, "#c0392b", 1.5);
        } else if (name == "ae") {
            chain(w, l, "#1f5fbf", 1.5);
        } else if (name == "n_points") {
            for (auto p : xys(l["points"])) w.dot(p, 2.5, fill("black"));
        }
        w.close();
    }
    if (!polygon_drawn) draw_polygon();
    if (!refusals.empty()) {
        w.open("refusals");
        for (std::size_t k = 0; k < refusals.size(); ++k)
            w.raw("<text x=\"8\" y=\"" + num(16 + 14 * static_cast<double>(k)) + "\" font-family=\"monospace\" font-size=\"12\">"
                  + refusals[k] + "</text>\n");
        w.close();
    }

    std::ostringstream doc;
    doc << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(c.width()) << "\" height=\""
        << num(c.height()) << "\" viewBox=\"0 0 " << num(c.width()) << ' ' << num(c.height()) << "\">\n"
        << "<desc>Coordinates are rounded to 9 significant digits for display only.</desc>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << w.str() << "</svg>\n";
    return doc.str();
}

} // namespace cpos
