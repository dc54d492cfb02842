#pragma once

#include "cpos/equidistants.hpp"
#include "cpos/pd_transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

namespace cpos {

/// Area of the region bounded by the chord y2 -> y1 and the boundary walked
/// counterclockwise from y1 on e(i+1/2) to y2 on e(j+1/2).
inline Rational chord_cut_area(const CposPolygon& p, int i, const Point& y1, int j, const Point& y2)
{
    const int m = p.size();
    i = wrap(i, m);
    j = wrap(j, m);
    if (!point_on_segment(y1, {p.vertex(i), p.vertex(i + 1)}))
        throw GeometryError(ErrorKind::Precondition, "first chord end is not on its edge", i);
    if (!point_on_segment(y2, {p.vertex(j), p.vertex(j + 1)}))
        throw GeometryError(ErrorKind::Precondition, "second chord end is not on its edge", j);
    if (i == j && dot(y2 - y1, p.edge(i)).sign() >= 0) return Rational(0);
    const int last = j > i ? j : j + m;
    std::vector<Point> region{y1};
    for (int k = i + 1; k <= last; ++k) region.push_back(p.vertex(k));
    region.push_back(y2);
    return polygon_area(region);
}

/// Coordinates centred at the apex of the wedge between the support lines of
/// e(i+1/2) and e(j+1/2). A chord from apex + 2X u to apex + 2Y v has midpoint
/// apex + X u + Y v and cuts off base_area - 2 X Y [u, v].
struct WedgeFrame {
    int i, j;
    Point apex;
    Vector axis_u, axis_v;
    Rational base_area;

    std::pair<Rational, Rational> coords(const Point& x) const
    {
        const Rational det = cross(axis_u, axis_v);
        const Vector d = x - apex;
        return {cross(d, axis_v) / det, cross(axis_u, d) / det};
    }
    Rational cut_area(const Point& midpoint) const
    {
        auto [x, y] = coords(midpoint);
        return base_area - Rational(2) * x * y * cross(axis_u, axis_v);
    }
    /// X * Y along the level-a area parallel.
    Rational hyperbola_constant(const Rational& a) const { return (base_area - a) / (Rational(2) * cross(axis_u, axis_v)); }
};

inline WedgeFrame wedge_frame(const CposPolygon& p, int i, int j)
{
    const int m = p.size();
    i = wrap(i, m);
    j = wrap(j, m);
    auto apex = line_intersect({p.vertex(i), p.edge(i)}, {p.vertex(j), p.edge(j)});
    if (!apex) throw GeometryError(ErrorKind::Precondition, "the support lines are parallel", j);
    std::vector<Point> region{*apex};
    const int last = j > i ? j : j + m;
    for (int k = i + 1; k <= last; ++k) region.push_back(p.vertex(k));
    Rational base = region.size() < 3 ? Rational(0) : polygon_area(region);
    return {i, j, *apex, p.edge(i), p.edge(j), base};
}

/// s = 0 puts the chord end at P_i, s = 1 at P_{i+1}; r does the same for P_j, P_{j+1}.
enum class CellWall { S0, S1, R0, R1 };

/// Ordered midpoint cell: chords from P_i + s e(i+1/2) to P_j + r e(j+1/2), with
/// the forward cut area bilinear in (s, r).
struct AreaCell {
    int i, j;
    bool degenerate;
    Point base;           // (P_i + P_j) / 2
    Vector half_u, half_v; // e(i+1/2) / 2, e(j+1/2) / 2
    Rational f00, f10, f01, f11;

    Point midpoint_at(const Rational& s, const Rational& r) const { return base + s * half_u + r * half_v; }
    Rational area_at(const Rational& s, const Rational& r) const
    {
        return f00 + (f10 - f00) * s + (f01 - f00) * r + (f11 - f10 - f01 + f00) * s * r;
    }
};

inline AreaCell area_cell(const CposPolygon& p, int i, int j)
{
    const int m = p.size();
    i = wrap(i, m);
    j = wrap(j, m);
    if (i == j) throw GeometryError(ErrorKind::Precondition, "a cell needs two different edges", i);
    auto f = [&](int s, int r) { return chord_cut_area(p, i, s ? p.vertex(i + 1) : p.vertex(i), j, r ? p.vertex(j + 1) : p.vertex(j)); };
    return {i,
            j,
            cross(p.edge(i), p.edge(j)).is_zero(),
            midpoint(p.vertex(i), p.vertex(j)),
            Rational(1, 2) * p.edge(i),
            Rational(1, 2) * p.edge(j),
            f(0, 0),
            f(1, 0),
            f(0, 1),
            f(1, 1)};
}

/// All ordered cells of a polygon, with corner areas from prefix sums of the
/// shoelace terms.
class AreaCellTable {
public:
    explicit AreaCellTable(const CposPolygon& p) : m_(p.size())
    {
        // twice the signed area swept from P_1 to P_k along the boundary, k up to 4n
        std::vector<Rational> prefix{Rational(0)};
        for (int k = 1; k < 2 * m_; ++k) prefix.push_back(prefix.back() + cross(p.vertex(k).as_vector(), p.vertex(k + 1).as_vector()));
        auto walk = [&](int a, int b) {
            return Rational(1, 2) * (prefix[static_cast<std::size_t>(b - 1)] - prefix[static_cast<std::size_t>(a - 1)]
                                     + cross(p.vertex(b).as_vector(), p.vertex(a).as_vector()));
        };
        cells_.reserve(static_cast<std::size_t>(m_ * m_));
        for (int i = 1; i <= m_; ++i)
            for (int j = 1; j <= m_; ++j) {
                if (i == j) {
                    cells_.push_back({i, j, true, p.vertex(i), {}, {}, {}, {}, {}, {}});
                    continue;
                }
                const int jj = j > i ? j : j + m_;
                cells_.push_back({i, j, cross(p.edge(i), p.edge(j)).is_zero(), midpoint(p.vertex(i), p.vertex(j)),
                                  Rational(1, 2) * p.edge(i), Rational(1, 2) * p.edge(j), walk(i, jj), walk(i + 1, jj),
                                  walk(i, jj + 1), walk(i + 1, jj + 1)});
            }
    }

    int size() const { return m_; }
    const AreaCell& at(int i, int j) const
    {
        return cells_[static_cast<std::size_t>((wrap(i, m_) - 1) * m_ + wrap(j, m_) - 1)];
    }

private:
    int m_;
    std::vector<AreaCell> cells_;
};

/// The rectified piece of the level-a area parallel inside one ordered cell. For a
/// degenerate cell both ends map to the same point of the mid-parallel.
struct LSegment {
    int i, j;
    bool degenerate;
    std::array<CellWall, 2> walls;
    std::array<std::pair<Rational, Rational>, 2> params; // (s, r) of each end
    Segment seg;
};

inline std::optional<LSegment> l_segment(const AreaCell& c, const Rational& a)
{
    struct Hit {
        CellWall wall;
        Rational s, r;
    };
    std::vector<Hit> hits;
    auto solve = [&](CellWall w, const Rational& v0, const Rational& v1, bool along_r, const Rational& fixed) {
        // Level a between the wall's end values v0 (param 0) and v1 (param 1).
        if (v0 == v1) {
            if (v0 == a) throw GeometryError(ErrorKind::NonGenericTangency, "area level runs along a cell wall", c.i);
            return;
        }
        Rational t = (a - v0) / (v1 - v0);
        if (t.sign() < 0 || t > Rational(1)) return;
        if (t.is_zero() || t == Rational(1))
            throw GeometryError(ErrorKind::NonGenericTangency, "area level passes through a cell corner", c.i);
        hits.push_back(along_r ? Hit{w, fixed, t} : Hit{w, t, fixed});
    };
    solve(CellWall::S0, c.f00, c.f01, true, Rational(0));
    solve(CellWall::S1, c.f10, c.f11, true, Rational(1));
    solve(CellWall::R0, c.f00, c.f10, false, Rational(0));
    solve(CellWall::R1, c.f01, c.f11, false, Rational(1));
    if (hits.empty()) return std::nullopt;
    if (hits.size() != 2) throw GeometryError(ErrorKind::NonGenericTangency, "area level meets a cell boundary oddly", c.i);
    LSegment l{c.i, c.j, c.degenerate, {hits[0].wall, hits[1].wall}, {{{hits[0].s, hits[0].r}, {hits[1].s, hits[1].r}}},
               {c.midpoint_at(hits[0].s, hits[0].r), c.midpoint_at(hits[1].s, hits[1].r)}};
    return l;
}

enum class LRegime {
    ThroughE,                  // ends on s = 0 and s = 1; support line through the midpoint of P_i P_{i+1}
    ParallelToCrossDiagonal1,  // cuts corner (s, r) = (0, 1); parallel to P_i P_{j+1}
    ParallelToCrossDiagonal2,  // cuts corner (1, 0); parallel to P_{i+1} P_j
    ThroughOppositeMidpoint,   // ends on r = 0 and r = 1; support line through the midpoint of P_j P_{j+1}
};

constexpr std::string_view to_string(LRegime r)
{
    switch (r) {
    case LRegime::ThroughE: return "ThroughE";
    case LRegime::ParallelToCrossDiagonal1: return "ParallelToCrossDiagonal1";
    case LRegime::ParallelToCrossDiagonal2: return "ParallelToCrossDiagonal2";
    case LRegime::ThroughOppositeMidpoint: return "ThroughOppositeMidpoint";
    }
    return "?";
}

struct LClassification {
    LRegime regime;
    bool in_lemma;       // one of the three regimes of the parallelogram lemma
    bool property_holds; // the regime's incidence or parallelism, checked exactly
};

inline LClassification classify_L_segment(const CposPolygon& p, const LSegment& l)
{
    if (l.degenerate) throw GeometryError(ErrorKind::Precondition, "a degenerate cell has no segment to classify", l.i);
    auto has = [&](CellWall w) { return l.walls[0] == w || l.walls[1] == w; };
    const Vector dir = l.seg.b - l.seg.a;
    const int i = l.i, j = l.j;
    if (has(CellWall::S0) && has(CellWall::S1))
        return {LRegime::ThroughE, true, orient(l.seg.a, l.seg.b, midpoint(p.vertex(i), p.vertex(i + 1))) == 0};
    if (has(CellWall::R0) && has(CellWall::R1))
        return {LRegime::ThroughOppositeMidpoint, false, orient(l.seg.a, l.seg.b, midpoint(p.vertex(j), p.vertex(j + 1))) == 0};
    if (has(CellWall::S0) && has(CellWall::R1))
        return {LRegime::ParallelToCrossDiagonal1, true, cross(dir, p.vertex(j + 1) - p.vertex(i)).is_zero()};
    if (has(CellWall::S1) && has(CellWall::R0))
        return {LRegime::ParallelToCrossDiagonal2, true, cross(dir, p.vertex(j) - p.vertex(i + 1)).is_zero()};
    throw GeometryError(ErrorKind::NonGenericTangency, "segment cuts off a corner where the area is not extremal", i);
}

/// Corners A..D and E of a cell, with F on AC at the level of B and G on BD at
/// the level of C when the level through B reaches AC.
struct LemmaPoints {
    Point a, b, c, d, e;
    std::optional<Point> f, g;
    bool configuration() const { return f.has_value() && g.has_value(); }
};

inline LemmaPoints lemma_points(const CposPolygon& p, const AreaCell& c)
{
    LemmaPoints lp{c.midpoint_at(Rational(1), Rational(0)), c.midpoint_at(Rational(0), Rational(0)),
                   c.midpoint_at(Rational(1), Rational(1)), c.midpoint_at(Rational(0), Rational(1)),
                   midpoint(p.vertex(c.i), p.vertex(c.i + 1)), std::nullopt, std::nullopt};
    if (c.degenerate || c.f11 == c.f10 || c.f01 == c.f00) return lp;
    Rational tf = (c.f00 - c.f10) / (c.f11 - c.f10); // along AC
    Rational tg = (c.f11 - c.f00) / (c.f01 - c.f00); // along BD
    auto unit = [](const Rational& t) { return t.sign() >= 0 && t <= Rational(1); };
    if (unit(tf) && unit(tg)) {
        lp.f = c.midpoint_at(Rational(1), tf);
        lp.g = c.midpoint_at(Rational(0), tg);
    }
    return lp;
}

namespace detail {

inline std::pair<int, int> across(const CposPolygon& p, int i, int j, CellWall w)
{
    const int m = p.size();
    switch (w) {
    case CellWall::S0: return {wrap(i - 1, m), j};
    case CellWall::S1: return {wrap(i + 1, m), j};
    case CellWall::R0: return {i, wrap(j - 1, m)};
    case CellWall::R1: return {i, wrap(j + 1, m)};
    }
    return {i, j};
}

inline CellWall facing(CellWall w)
{
    switch (w) {
    case CellWall::S0: return CellWall::S1;
    case CellWall::S1: return CellWall::S0;
    case CellWall::R0: return CellWall::R1;
    case CellWall::R1: return CellWall::R0;
    }
    return w;
}

/// Crossing-number test for a closed polyline; boundary points count as outside.
inline bool strictly_inside(const std::vector<Point>& poly, const Point& x)
{
    bool inside = false;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Point& a = poly[k];
        const Point& b = poly[(k + 1) % poly.size()];
        if (point_on_segment(x, {a, b})) return false;
        if ((a.y > x.y) != (b.y > x.y)) {
            Rational xc = a.x + (x.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x.x < xc) inside = !inside;
        }
    }
    return inside;
}

/// Padded floating-point bounding box, only used to skip exact tests.
struct Box {
    double x0, x1, y0, y1;
    explicit Box(const Segment& s)
    {
        auto pad = [](double v) { return 1e-9 * (1.0 + std::abs(v)); };
        const double ax = s.a.x.to_double(), bx = s.b.x.to_double(), ay = s.a.y.to_double(), by = s.b.y.to_double();
        x0 = std::min(ax, bx) - pad(std::min(ax, bx));
        x1 = std::max(ax, bx) + pad(std::max(ax, bx));
        y0 = std::min(ay, by) - pad(std::min(ay, by));
        y1 = std::max(ay, by) + pad(std::max(ay, by));
    }
    bool meets(const Box& o) const { return !(x1 < o.x0 || o.x1 < x0 || y1 < o.y0 || o.y1 < y0); }
};

inline bool on_area_evolute(const PolyChain& ae, const Point& x)
{
    if (ae.is_point()) return ae.points.front() == x;
    for (const auto& e : ae.edges())
        if (point_on_segment(x, e)) return true;
    return false;
}

} // namespace detail

struct RectifiedParallel {
    Rational level;
    std::vector<PolyChain> chains;
    std::vector<std::vector<LSegment>> pieces; // per chain, in traversal order

    /// Crossings between non-adjacent chain edges, over all chains of this level.
    std::vector<Point> self_intersections() const
    {
        struct E {
            std::size_t chain, k;
            Segment s;
            detail::Box box;
        };
        std::vector<E> edges;
        for (std::size_t c = 0; c < chains.size(); ++c) {
            auto es = chains[c].edges();
            for (std::size_t k = 0; k < es.size(); ++k) edges.push_back({c, k, es[k], detail::Box(es[k])});
        }
        std::set<Point> out;
        for (std::size_t x = 0; x < edges.size(); ++x)
            for (std::size_t y = x + 1; y < edges.size(); ++y) {
                const E& e1 = edges[x];
                const E& e2 = edges[y];
                if (!e1.box.meets(e2.box)) continue;
                if (e1.chain == e2.chain) {
                    const std::size_t sz = chains[e1.chain].points.size();
                    if ((e1.k + 1) % sz == e2.k || (e2.k + 1) % sz == e1.k) continue;
                }
                if (segments_overlap(e1.s, e2.s))
                    throw GeometryError(ErrorKind::NonGenericCoincidence, "rectified parallel overlaps itself");
                if (auto pt = segment_intersection(e1.s, e2.s)) out.insert(*pt);
            }
        return {out.begin(), out.end()};
    }
};

/// Union of the segments L over all ordered cells at area level a, traced into
/// closed chains. Cusp flags come from the side of the mid-parallel on which the
/// chain continues after a degenerate cell.
inline RectifiedParallel rectified_parallel(const CposPolygon& p, const AreaCellTable& table, const Rational& a)
{
    const Rational half = p.area() / Rational(2);
    if (a.sign() <= 0 || a > half) throw GeometryError(ErrorKind::LevelOutOfRange, "level must satisfy 0 < a <= area/2");
    const int m = p.size(), n = p.n();

    std::map<std::pair<int, int>, std::pair<AreaCell, LSegment>> active;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            if (i == j) continue;
            const AreaCell& c = table.at(i, j);
            if (auto l = l_segment(c, a)) active.emplace(std::pair{i, j}, std::pair{c, *l});
        }

    auto side = [&](const AreaCell& c, int k) {
        return cross(p.edge(k), c.midpoint_at(Rational(1, 2), Rational(1, 2)) - p.diagonal_midpoint(k)).sign();
    };
    auto point_at = [](const LSegment& l, CellWall w) { return l.walls[0] == w ? l.seg.a : l.seg.b; };

    RectifiedParallel out{a, {}, {}};
    std::set<std::pair<int, int>> visited;
    for (const auto& [key0, start] : active) {
        if (visited.count(key0)) continue;
        PolyChain chain;
        chain.closed = true;
        std::vector<LSegment> pieces;
        auto push = [&](const Point& x, bool cusp) {
            if (!chain.points.empty() && chain.points.back() == x) {
                chain.cusps.back() = chain.cusps.back() || cusp;
                return;
            }
            chain.points.push_back(x);
            chain.cusps.push_back(cusp);
        };
        std::pair<int, int> key = key0;
        CellWall entry = start.second.walls[0];
        while (true) {
            if (!visited.insert(key).second) break;
            const auto& [cell, l] = active.at(key);
            CellWall exit = l.walls[0] == entry ? l.walls[1] : l.walls[0];
            auto next_key = detail::across(p, key.first, key.second, exit);
            auto it = active.find(next_key);
            if (it == active.end())
                throw GeometryError(ErrorKind::NonGenericTangency, "rectified parallel does not continue across a wall", key.first);
            CellWall next_entry = detail::facing(exit);
            const LSegment& nl = it->second.second;
            if ((nl.walls[0] != next_entry && nl.walls[1] != next_entry) || point_at(nl, next_entry) != point_at(l, exit))
                throw GeometryError(ErrorKind::NonGenericTangency, "neighbouring cells disagree on a wall point", key.first);
            bool cusp = false;
            if (cell.degenerate) {
                // The mid-parallel m through M_k, k = i or i - n.
                const int k = wrap(key.first, n);
                const AreaCell& before = active.at(detail::across(p, key.first, key.second, entry)).first;
                cusp = side(before, k) == side(it->second.first, k);
            }
            pieces.push_back(l);
            push(point_at(l, exit), cusp);
            key = next_key;
            entry = next_entry;
        }
        if (key != key0) throw GeometryError(ErrorKind::NonGenericTangency, "rectified parallel does not close", key0.first);
        if (chain.points.size() > 1 && chain.points.back() == chain.points.front()) {
            chain.cusps.front() = chain.cusps.front() || chain.cusps.back();
            chain.points.pop_back();
            chain.cusps.pop_back();
        }
        out.chains.push_back(std::move(chain));
        out.pieces.push_back(std::move(pieces));
    }
    return out;
}

inline RectifiedParallel rectified_parallel(const CposPolygon& p, const Rational& a)
{
    return rectified_parallel(p, AreaCellTable(p), a);
}

/// True when the vertex lies on an edge or vertex of the area evolute, for each chain vertex.
inline std::vector<std::vector<bool>> on_area_evolute(const CposPolygon& p, const RectifiedParallel& rp)
{
    auto ae = area_evolute(p);
    std::vector<std::vector<bool>> out;
    for (const auto& c : rp.chains) {
        std::vector<bool> flags;
        for (const auto& x : c.points) flags.push_back(detail::on_area_evolute(ae, x));
        out.push_back(std::move(flags));
    }
    return out;
}

/// Whether the closed chain has every area evolute vertex strictly inside it.
inline bool encloses_area_evolute(const CposPolygon& p, const PolyChain& chain)
{
    for (const auto& x : area_evolute(p).points)
        if (!detail::strictly_inside(chain.points, x)) return false;
    return true;
}

/// Sampled points of the true hyperbola arc under an L segment, for display only.
inline std::vector<std::pair<double, double>> hyperbola_arc_samples(const CposPolygon& p, const LSegment& l, int samples)
{
    AreaCell c = area_cell(p, l.i, l.j);
    const double f00 = c.f00.to_double(), bs = (c.f10 - c.f00).to_double(), br = (c.f01 - c.f00).to_double();
    const double d = (c.f11 - c.f10 - c.f01 + c.f00).to_double();
    const double level = (c.area_at(l.params[0].first, l.params[0].second)).to_double();
    const double s0 = l.params[0].first.to_double(), s1 = l.params[1].first.to_double();
    const double r0 = l.params[0].second.to_double(), r1 = l.params[1].second.to_double();
    const bool by_s = std::abs(s1 - s0) >= std::abs(r1 - r0);
    std::vector<std::pair<double, double>> out;
    for (int k = 0; k <= samples; ++k) {
        double t = static_cast<double>(k) / samples, s, r;
        if (by_s) {
            s = s0 + t * (s1 - s0);
            r = (level - f00 - bs * s) / (br + d * s);
        } else {
            r = r0 + t * (r1 - r0);
            s = (level - f00 - br * r) / (bs + d * r);
        }
        out.emplace_back(c.base.x.to_double() + s * c.half_u.x.to_double() + r * c.half_v.x.to_double(),
                         c.base.y.to_double() + s * c.half_u.y.to_double() + r * c.half_v.y.to_double());
    }
    return out;
}

/// Midpoints of P_k P_{k+n+1}, k = 1..2n.
inline std::vector<Point> one_diagonal_midpoints(const CposPolygon& p)
{
    std::vector<Point> out;
    for (int k = 1; k <= p.size(); ++k) out.push_back(midpoint(p.vertex(k), p.vertex(k + p.n() + 1)));
    return out;
}

/// Per vertex Q(i+1/2) of Q_mu, the smaller area cut by the chord between
/// e(i+1/2) and e(i+n+1/2) whose midpoint is that vertex.
inline std::vector<Rational> pd_levels(const CposPolygon& p, const Rational& mu)
{
    auto tr = pd_transform(p, mu);
    std::vector<Rational> out;
    const Rational total = p.area();
    for (int i = 1; i <= p.size(); ++i) {
        AreaCell c = area_cell(p, i, i + p.n());
        const Vector e = p.edge(i);
        Rational s = Rational(2) * dot(tr.q[static_cast<std::size_t>(i - 1)] - p.diagonal_midpoint(i), e) / dot(e, e);
        Rational f = c.area_at(s, Rational(0));
        out.push_back(min(f, total - f));
    }
    return out;
}

struct AlmostSymmetryCertificate {
    Rational mu0;
    CposPolygon q;
    bool ae_inside;
    bool one_diag_midpoints_outside;

    bool valid() const { return ae_inside && one_diag_midpoints_outside; }
};

/// Evaluates Q_mu as a candidate; nullopt when it is not a convex CPOS polygon.
inline std::optional<AlmostSymmetryCertificate> certify_mu(const CposPolygon& p, const Rational& mu)
{
    auto tr = pd_transform(p, mu);
    std::optional<CposPolygon> q;
    try {
        q = tr.q_polygon();
    } catch (const GeometryError&) {
        return std::nullopt;
    }
    bool inside = true, outside = true;
    for (const auto& x : area_evolute(p).points) inside = inside && locate_in_convex(x, q->vertices()) == Containment::Inside;
    for (const auto& x : one_diagonal_midpoints(p)) outside = outside && locate_in_convex(x, q->vertices()) == Containment::Outside;
    return AlmostSymmetryCertificate{mu, *q, inside, outside};
}

namespace detail {

/// The rational with the smallest denominator strictly between lo and hi.
inline Rational simplest_between(const Rational& lo, const Rational& hi)
{
    Rational f = lo.floor();
    if (f + Rational(1) < hi) {
        if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
        if (hi.sign() <= 0) return -(-hi).floor() - Rational(1);
        return f + Rational(1);
    }
    if (lo == f) return f + Rational(1) / ((Rational(1) / (hi - f)).floor() + Rational(1));
    return f + Rational(1) / simplest_between(Rational(1) / (hi - f), Rational(1) / (lo - f));
}

inline void push_roots(const Rational& c2, const Rational& c1, const Rational& c0, std::vector<double>& out)
{
    if (c2.is_zero()) {
        if (!c1.is_zero()) out.push_back((-c0 / c1).to_double());
        return;
    }
    Rational disc = c1 * c1 - Rational(4) * c2 * c0;
    if (disc.sign() < 0) return;
    const double a = c2.to_double(), b = c1.to_double(), sq = std::sqrt(disc.to_double());
    const double qv = -0.5 * (b + (b >= 0 ? sq : -sq));
    if (qv != 0) {
        out.push_back(qv / a);
        out.push_back(c0.to_double() / qv);
    } else {
        out.push_back(0.0);
    }
}

} // namespace detail

/// Searches for mu0 with Q_mu0 convex, the area evolute strictly inside and every
/// 1-diagonal midpoint strictly outside. Each containment test is quadratic in mu,
/// so one rational from every gap between consecutive critical values is tried.
inline std::optional<AlmostSymmetryCertificate> almost_symmetry(const CposPolygon& p)
{
    auto tr0 = pd_transform(p, Rational(0));
    auto tr1 = pd_transform(p, Rational(1));
    const std::size_t m = tr0.q.size();
    std::vector<Point> probes = area_evolute(p).points;
    for (const auto& x : one_diagonal_midpoints(p)) probes.push_back(x);

    std::vector<double> roots;
    for (std::size_t k = 0; k < m; ++k) {
        const Point& a0 = tr0.q[k];
        const Vector b0 = tr1.q[k] - a0;
        const Vector da = tr0.q[(k + 1) % m] - a0;
        const Vector db = (tr1.q[(k + 1) % m] - tr0.q[(k + 1) % m]) - b0;
        if (!db.x.is_zero()) roots.push_back((-da.x / db.x).to_double());
        else if (!db.y.is_zero()) roots.push_back((-da.y / db.y).to_double());
        for (const auto& x : probes) {
            const Vector xa = x - a0;
            detail::push_roots(-cross(db, b0), cross(db, xa) - cross(da, b0), cross(da, xa), roots);
        }
    }
    std::sort(roots.begin(), roots.end());
    // Roots that agree to rounding are one root; the sliver between them is noise.
    auto same = [](double a, double b) { return b - a <= 1e-12 * std::max(1.0, std::abs(a)); };
    roots.erase(std::unique(roots.begin(), roots.end(), same), roots.end());

    std::vector<Rational> candidates;
    if (roots.empty()) {
        candidates.push_back(Rational(0));
    } else {
        auto exact = [](double d) { return Rational::from_double(d); };
        candidates.push_back(detail::simplest_between(exact(roots.front()) - Rational(2), exact(roots.front())));
        for (std::size_t k = 0; k + 1 < roots.size(); ++k)
            candidates.push_back(detail::simplest_between(exact(roots[k]), exact(roots[k + 1])));
        candidates.push_back(detail::simplest_between(exact(roots.back()), exact(roots.back()) + Rational(2)));
    }
    const Rational mc = collapse_mu(p);
    std::stable_partition(candidates.begin(), candidates.end(), [&](const Rational& mu) { return mu >= mc; });
    for (const auto& mu : candidates)
        if (auto cert = certify_mu(p, mu); cert && cert->valid()) return cert;
    return std::nullopt;
}

struct RassReport {
    AlmostSymmetryCertificate certificate;
    std::vector<EssBranch> branches;
    std::vector<Rational> levels;        // levels whose rectified parallels were checked
    std::size_t checked_points = 0;
    std::vector<Point> stray_points;     // self-intersections off every branch

    bool consistent() const { return stray_points.empty(); }
};

/// The rectified area symmetry set as the ESS of Q_mu0, cross-checked against
/// self-intersections of rectified parallels at sampled levels.
inline RassReport rass(const CposPolygon& p, int samples = 12)
{
    auto cert = almost_symmetry(p);
    if (!cert) throw GeometryError(ErrorKind::NoCertificate, "no almost-symmetry certificate; the RASS is not computed");
    RassReport rep{*cert, ess_trace(cert->q), {}, 0, {}};

    const Rational half = p.area() / Rational(2);
    std::vector<Rational> levels;
    for (int k = 1; k <= samples; ++k) levels.push_back(half * Rational(k, samples + 1));
    // Levels of the transforms between the collapse and the certificate.
    const Rational mc = collapse_mu(p);
    for (int k = 1; k < samples; ++k) {
        auto ls = pd_levels(p, mc + (cert->mu0 - mc) * Rational(k, samples));
        if (std::all_of(ls.begin(), ls.end(), [&](const Rational& l) { return l == ls.front(); }) && ls.front().sign() > 0
            && ls.front() < half)
            levels.push_back(ls.front());
    }
    const AreaCellTable table(p);
    for (const auto& a : levels) {
        std::vector<Point> xs;
        try {
            xs = rectified_parallel(p, table, a).self_intersections();
        } catch (const GeometryError& e) {
            if (e.kind() != ErrorKind::NonGenericTangency && e.kind() != ErrorKind::NonGenericCoincidence) throw;
            continue;
        }
        rep.levels.push_back(a);
        for (const auto& x : xs) {
            ++rep.checked_points;
            bool found = false;
            for (const auto& br : rep.branches)
                for (const auto& s : br.segments) found = found || point_on_segment(x, s.seg);
            if (!found) rep.stray_points.push_back(x);
        }
    }
    return rep;
}

} // namespace cpos
