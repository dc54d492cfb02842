#pragma once

#include "cpos/evolute.hpp"

#include <array>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace cpos {

/// The set of midpoints of chords joining edge i to edge j. Corners run
/// ½(P_i+P_j), ½(P_{i+1}+P_j), ½(P_{i+1}+P_{j+1}), ½(P_i+P_{j+1}).
struct MidpointCell {
    int i;
    int j;
    std::array<Point, 4> vertices;
    bool degenerate; // j = i + n: the cell is a segment on the mid-parallel through M_i

    std::array<Segment, 4> edges() const
    {
        return {Segment{vertices[0], vertices[1]}, Segment{vertices[1], vertices[2]}, Segment{vertices[2], vertices[3]},
                Segment{vertices[3], vertices[0]}};
    }
};

/// All n(2n-1) cells, one per unordered edge pair i < j.
inline std::vector<MidpointCell> midpoint_cells(const CposPolygon& p)
{
    std::vector<MidpointCell> cells;
    const int m = p.size();
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            const Point &a = p.vertex(i), &b = p.vertex(i + 1), &c = p.vertex(j), &d = p.vertex(j + 1);
            cells.push_back({i, j, {midpoint(a, c), midpoint(b, c), midpoint(b, d), midpoint(a, d)}, j == i + p.n()});
        }
    return cells;
}

namespace detail {

inline bool on_closed_edge(const CposPolygon& p, int k, const Point& y)
{
    return point_on_segment(y, {p.vertex(k), p.vertex(k + 1)});
}

/// Closed midpoint segment of the parallel pair (k, k+n).
inline Segment degenerate_extent(const CposPolygon& p, int k)
{
    const int n = p.n();
    std::array<Point, 4> c{midpoint(p.vertex(k), p.vertex(k + n)), midpoint(p.vertex(k + 1), p.vertex(k + n)),
                           midpoint(p.vertex(k + 1), p.vertex(k + n + 1)), midpoint(p.vertex(k), p.vertex(k + n + 1))};
    auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    return {*lo, *hi};
}

} // namespace detail

/// Number of chord families with midpoint x. Chords joining a parallel pair of
/// edges count once as a family; every other chord counts once however many
/// cells produce it. Great-diagonal midpoints are allowed; other cell corners
/// throw OnCellVertex.
inline int count_midpoint_chords(const CposPolygon& p, const Point& x)
{
    if (locate_in_convex(x, p.vertices()) != Containment::Inside)
        throw GeometryError(ErrorKind::Outside, "point is not strictly inside the polygon");
    const int m = p.size(), n = p.n();
    for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b)
            if (b != a + n && midpoint(p.vertex(a), p.vertex(b)) == x)
                throw GeometryError(ErrorKind::OnCellVertex, "point is a midpoint cell vertex");

    int families = 0;
    for (int k = 1; k <= n; ++k)
        if (point_on_segment(x, detail::degenerate_extent(p, k))) ++families;

    const Vector twice = Rational(2) * x.as_vector();
    std::set<std::pair<Point, Point>> chords;
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            if (j == i + n) continue;
            Vector ei = p.edge(i), ej = p.edge(j);
            Vector rhs = twice - p.vertex(i).as_vector() - p.vertex(j).as_vector();
            Rational den = cross(ei, ej);
            Rational s = cross(rhs, ej) / den, r = cross(ei, rhs) / den;
            if (s.sign() < 0 || s > Rational(1) || r.sign() < 0 || r > Rational(1)) continue;
            Point y1 = p.vertex(i) + s * ei, y2 = p.vertex(j) + r * ej;
            if (y2 < y1) std::swap(y1, y2);
            chords.insert({y1, y2});
        }

    int isolated = 0;
    for (const auto& [y1, y2] : chords) {
        bool absorbed = false;
        for (int k = 1; k <= m && !absorbed; ++k)
            absorbed = detail::on_closed_edge(p, k, y1) && detail::on_closed_edge(p, k + n, y2);
        if (!absorbed) ++isolated;
    }
    return families + isolated;
}

struct JumpSample {
    int edge;           // AE edge M_edge M_{edge+1}
    Point on_edge;      // base point on the open AE edge
    Point minus, plus;  // base -/+ eps * normal
    int n_minus, n_plus;
    bool pass;
};

struct JumpLawReport {
    std::vector<JumpSample> samples;
    bool pass() const
    {
        for (const auto& s : samples)
            if (!s.pass) return false;
        return true;
    }
};

namespace detail {

/// Support lines of every cell edge and polygon edge, without repeats of a
/// zero-length segment.
inline std::vector<Line> arrangement_lines(const CposPolygon& p)
{
    std::vector<Line> lines;
    for (const auto& c : midpoint_cells(p))
        for (const auto& s : c.edges())
            if (s.a != s.b) lines.push_back(Line::through(s.a, s.b));
    for (int i = 1; i <= p.size(); ++i) lines.push_back(Line::through(p.vertex(i), p.vertex(i + 1)));
    return lines;
}

/// Half the nearest crossing parameter of the ray base + t*normal with any
/// arrangement line other than `own`, or nullopt if a transversal line passes
/// through base itself.
inline std::optional<Rational> straddle_eps(const std::vector<Line>& lines, const Line& own, const Point& base,
                                            const Vector& normal)
{
    std::optional<Rational> best;
    for (const auto& l : lines) {
        bool through_base = on_line(l, base);
        if (through_base && cross(l.dir, own.dir).is_zero()) continue;
        if (through_base) return std::nullopt;
        Rational den = cross(normal, l.dir);
        if (den.is_zero()) continue;
        Rational t = abs(cross(l.base - base, l.dir) / den);
        if (!best || t < *best) best = t;
    }
    return *best / Rational(2);
}

} // namespace detail

/// Samples each open AE edge at `samples_per_edge` interior points and checks
/// that N changes by exactly 2 across it. A sample point that a transversal
/// cell boundary passes through is nudged along the edge.
inline JumpLawReport verify_jump_law(const CposPolygon& p, int samples_per_edge = 1)
{
    JumpLawReport report;
    if (is_symmetric(p)) return report;
    const auto lines = detail::arrangement_lines(p);
    for (int k = 1; k <= p.n(); ++k) {
        Point a = p.diagonal_midpoint(k), b = p.diagonal_midpoint(k + 1);
        if (a == b) continue;
        Line own = Line::through(a, b);
        Vector normal{-own.dir.y, own.dir.x};
        for (int s = 1; s <= samples_per_edge; ++s) {
            Rational frac(s, samples_per_edge + 1);
            std::optional<Rational> eps;
            Point base;
            const int tries = static_cast<int>(lines.size()) + 2;
            for (int attempt = 0; !eps; ++attempt) {
                if (attempt > tries) throw GeometryError(ErrorKind::NonGenericCoincidence, "no generic sample point on AE edge", k);
                int step = (attempt + 1) / 2 * (attempt % 2 == 0 ? -1 : 1);
                Rational f = frac + Rational(step, 4 * (tries + 1) * (samples_per_edge + 1));
                base = lerp(a, b, f);
                eps = detail::straddle_eps(lines, own, base, normal);
            }
            Point minus = base - *eps * normal, plus = base + *eps * normal;
            int nm = count_midpoint_chords(p, minus), np = count_midpoint_chords(p, plus);
            report.samples.push_back({k, base, minus, plus, nm, np, nm - np == 2 || np - nm == 2});
        }
    }
    return report;
}

/// A face of the midpoint cell arrangement clipped to the polygon, with the
/// constant value of N on its interior.
struct NchordsFace {
    std::vector<Point> polygon;
    int count;
};

namespace detail {

/// Splits a convex polygon by the line a x + b y = c; pieces of zero area are dropped.
inline std::vector<std::vector<Point>> split_convex(const std::vector<Point>& poly, const std::array<Rational, 3>& l)
{
    auto side = [&](const Point& v) { return l[0] * v.x + l[1] * v.y - l[2]; };
    std::vector<Point> neg, pos;
    const std::size_t k = poly.size();
    for (std::size_t t = 0; t < k; ++t) {
        const Point &u = poly[t], &v = poly[(t + 1) % k];
        Rational fu = side(u), fv = side(v);
        if (fu.sign() <= 0) neg.push_back(u);
        if (fu.sign() >= 0) pos.push_back(u);
        if (fu.sign() * fv.sign() < 0) {
            Point x = lerp(u, v, fu / (fu - fv));
            neg.push_back(x);
            pos.push_back(x);
        }
    }
    std::vector<std::vector<Point>> out;
    for (auto* piece : {&neg, &pos})
        if (piece->size() >= 3 && polygon_area(*piece).sign() != 0) out.push_back(std::move(*piece));
    return out;
}

} // namespace detail

/// Faces of the arrangement of all cell boundaries inside the polygon, each
/// labelled with N at its vertex average.
inline std::vector<NchordsFace> nchords_faces(const CposPolygon& p)
{
    std::set<std::array<Rational, 3>> lines;
    for (const auto& l : detail::arrangement_lines(p)) {
        Rational a = -l.dir.y, b = l.dir.x;
        Rational lead = a.is_zero() ? b : a;
        lines.insert({a / lead, b / lead, (a * l.base.x + b * l.base.y) / lead});
    }
    std::vector<std::vector<Point>> faces{p.vertices()};
    for (const auto& l : lines) {
        std::vector<std::vector<Point>> next;
        for (const auto& f : faces)
            for (auto& piece : detail::split_convex(f, l)) next.push_back(std::move(piece));
        faces = std::move(next);
    }
    std::vector<NchordsFace> out;
    for (auto& f : faces) {
        Vector sum;
        for (const auto& v : f) sum = sum + v.as_vector();
        Point centre = Point{} + Rational(1, static_cast<long>(f.size())) * sum;
        int count = count_midpoint_chords(p, centre);
        out.push_back({std::move(f), count});
    }
    return out;
}

} // namespace cpos
