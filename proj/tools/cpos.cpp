#include "cpos/cpos.hpp"
#include "cpos/service.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace cpos;

namespace {

enum Exit { Ok = 0, Refused = 1, Malformed = 2 };

std::string read_input(const std::string& path)
{
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

struct Options {
    std::string file;
    std::string svg;
    std::string at;
    std::string t, level, mu;
    bool auto_mu = false;
    std::string features;
    std::string output = "-";
    std::string host = "127.0.0.1";
    int port = 0;
};

SceneRequest request_from(const Options& o, std::vector<std::string> features)
{
    SceneRequest req;
    std::string csv;
    for (const auto& f : features) csv += f + ",";
    req.features = parse_features(csv);
    if (!o.t.empty()) req.t = parse_rational(o.t);
    if (!o.level.empty()) req.level = parse_rational(o.level);
    if (!o.mu.empty()) req.mu = parse_rational(o.mu);
    return req;
}

// Prints the main layer exactly as the HTTP scene would carry it, and writes
// the SVG overlay when asked.
int feature_command(const CposPolygon& p, const Options& o, const std::string& main, std::vector<std::string> overlays)
{
    std::vector<std::string> features{main};
    if (!o.svg.empty()) features.insert(features.end(), overlays.begin(), overlays.end());
    auto scene = scene_json(p, request_from(o, features));
    const Json& layer = scene["layers"][main];
    std::cout << layer.dump() << '\n';
    if (!o.svg.empty()) write_file(o.svg, render_svg(scene));
    return layer.contains("error") ? Refused : Ok;
}

int run(CLI::App& app, const Options& o)
{
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "serve") {
        int port = o.port;
        if (port == 0) port = std::getenv("CPOS_PORT") ? std::atoi(std::getenv("CPOS_PORT")) : 8080;
        Service service;
        std::cerr << "cpos " << version << " listening on " << o.host << ':' << port << '\n';
        return serve(service, o.host, port) ? Ok : Refused;
    }

    const CposPolygon p = polygon_from_json(parse_json(read_input(o.file)));
    if (cmd == "validate") {
        std::cout << validation_json(p).dump() << '\n';
        return Ok;
    }
    if (cmd == "evolute") return feature_command(p, o, "ae", {"diagonals", "css"});
    if (cmd == "css") return feature_command(p, o, "css", {"diagonals", "ae"});
    if (cmd == "nchords") {
        std::cout << count_midpoint_chords(p, parse_point(o.at)) << '\n';
        return Ok;
    }
    if (cmd == "nchords-map") return feature_command(p, o, "nchords_map", {"ae"});
    if (cmd == "equidistant") return feature_command(p, o, "equidistant", {"ae"});
    if (cmd == "ess") return feature_command(p, o, "ess", {"ae", "css"});
    if (cmd == "pdtransform" && o.mu.empty() != o.auto_mu) throw ParseError("pdtransform needs exactly one of --mu and --auto");
    if (cmd == "pdtransform") return feature_command(p, o, "pd", {"midparallels", "ae", "n_points"});
    if (cmd == "area-parallel") return feature_command(p, o, "area_parallel", {"ae"});
    if (cmd == "rass") return feature_command(p, o, "rass", {"ae"});
    if (cmd == "almost-symmetry") {
        std::cout << almost_symmetry_json(p).dump() << '\n';
        return Ok;
    }
    if (cmd == "check") {
        auto results = run_checks(p);
        std::cout << checks_json(results).dump() << '\n';
        return all_pass(results) ? Ok : Refused;
    }
    if (cmd == "svg") {
        write_file(o.output, render_svg(scene_json(p, request_from(o, {o.features}))));
        return Ok;
    }
    throw ParseError("unknown command " + cmd);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact constructions on convex polygons with parallel opposite sides"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);
    Options o;

    auto with_file = [&](const char* name, const char* help) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("file", o.file, "polygon JSON document, or - for stdin")->required();
        return sc;
    };
    auto with_svg = [&](CLI::App* sc) { sc->add_option("--svg", o.svg, "also write an SVG drawing to this path"); };

    with_file("validate", "check the CPOS conditions");
    with_svg(with_file("evolute", "area evolute with cusp flags"));
    with_svg(with_file("css", "central symmetry set with cusp flags"));
    with_file("nchords", "number of chords with a given midpoint")->add_option("--at", o.at, "x,y")->required();
    with_svg(with_file("nchords-map", "faces of constant chord count"));
    auto* eq = with_file("equidistant", "the equidistant at level t");
    eq->add_option("--t", o.t, "level p/q")->required();
    with_svg(eq);
    with_svg(with_file("ess", "the equidistant symmetry set"));
    auto* pd = with_file("pdtransform", "the parallel-diagonal transform");
    auto* mu = pd->add_option("--mu", o.mu, "mu(1/2) as p/q");
    auto* au = pd->add_flag("--auto", o.auto_mu, "choose a convex transform containing the evolute");
    mu->excludes(au);
    with_svg(pd);
    auto* ap = with_file("area-parallel", "the rectified area parallel at a level");
    ap->add_option("--level", o.level, "cut area p/q")->required();
    with_svg(ap);
    with_file("almost-symmetry", "search for an almost-symmetry certificate");
    with_svg(with_file("rass", "the rectified area symmetry set"));
    with_file("check", "run every checkable statement on the polygon");
    auto* sv = with_file("svg", "draw selected layers");
    sv->add_option("--features", o.features, "comma-separated layers")->required();
    sv->add_option("--t", o.t, "equidistant level");
    sv->add_option("--level", o.level, "area level");
    sv->add_option("--mu", o.mu, "transform parameter (default: automatic)");
    sv->add_option("-o,--output", o.output, "output path, - for stdout");
    auto* se = app.add_subcommand("serve", "HTTP JSON API");
    se->add_option("--port", o.port, "port (default: $CPOS_PORT or 8080)");
    se->add_option("--host", o.host, "bind address");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Malformed;
    }
    try {
        return run(app, o);
    } catch (const GeometryError& e) {
        std::cout << error_json(e).dump() << '\n';
        return Refused;
    } catch (const std::exception& e) {
        std::cerr << "cpos: " << e.what() << '\n';
        return Malformed;
    }
}
