#pragma once

#include "cpos/evolute.hpp"

#include <array>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace cpos {

/// P_i(t) = P_i + t (P_{i+n} - P_i).
inline Point equidistant_vertex(const CposPolygon& p, int i, const Rational& t)
{
    return lerp(p.vertex(i), p.vertex(i + p.n()), t);
}

/// Edge P_{i+1}(t) - P_i(t) as a multiple of e(i+1/2): (1-t) - t*alpha_i.
inline Rational equidistant_edge_scale(const CposPolygon& p, int i, const Rational& t)
{
    return Rational(1) - t - t * opposite_ratio(p, i);
}

/// f_i(t) = [e(i-1/2)(t), e(i+1/2)(t)].
inline Rational cusp_function(const CposPolygon& p, int i, const Rational& t)
{
    Vector prev = equidistant_vertex(p, i, t) - equidistant_vertex(p, i - 1, t);
    Vector next = equidistant_vertex(p, i + 1, t) - equidistant_vertex(p, i, t);
    return cross(prev, next);
}

struct Equidistant {
    Rational t;
    std::vector<Point> points;
    std::vector<bool> cusps;
};

inline Equidistant equidistant(const CposPolygon& p, const Rational& t)
{
    Equidistant e{t, {}, {}};
    for (int i = 1; i <= p.size(); ++i) {
        e.points.push_back(equidistant_vertex(p, i, t));
        e.cusps.push_back(cusp_function(p, i, t).sign() < 0);
    }
    return e;
}

/// Vertex i is a cusp of P_t for t strictly inside (lo, hi), while P_i(t)
/// runs over the CSS edge `swept`.
struct CuspSweep {
    int vertex;
    Rational lo, hi;
    Segment swept;
    bool empty() const { return !(lo < hi); }
};

inline std::vector<CuspSweep> cusp_locus(const CposPolygon& p)
{
    const bool symmetric = is_symmetric(p).has_value();
    if (!symmetric && detail::css_degeneracy(p))
        throw GeometryError(ErrorKind::DegenerateCss, "CSS has a repeated vertex");
    std::vector<CuspSweep> out;
    for (int i = 1; i <= p.size(); ++i) {
        Rational a = css_lambda(p, i - 1), b = css_lambda(p, i);
        Point pa = equidistant_vertex(p, i, a), pb = equidistant_vertex(p, i, b);
        if (b < a) {
            std::swap(a, b);
            std::swap(pa, pb);
        }
        out.push_back({i, a, b, {pa, pb}});
    }
    return out;
}

enum class EssEndpoint { CssCusp, AeCusp };

inline const char* to_string(EssEndpoint k) { return k == EssEndpoint::CssCusp ? "CssCusp" : "AeCusp"; }

/// Part of the ESS swept by the crossing of moving edges a and b for t in
/// [t_from, t_to] (in traversal order, so t_from may exceed t_to).
struct EssSegment {
    int a, b;
    Rational t_from, t_to;
    Segment seg; // seg.a at t_from, seg.b at t_to
};

/// Shared point of consecutive segments, on the great diagonal d_vertex.
struct EssJunction {
    Point point;
    int vertex;
    Rational t;
    bool cusp;   // both neighbouring segments on the same side of d_vertex
    bool on_css; // point lies on the central symmetry set
};

struct EssBranch {
    std::vector<EssSegment> segments;
    std::vector<EssJunction> junctions; // junctions[k] joins segments k and k+1
    bool closed = false;
    std::array<std::optional<EssEndpoint>, 2> endpoints; // at segments.front() start and segments.back() end
};

namespace detail {

/// Closed interval with optional (infinite) ends.
struct TInterval {
    std::optional<Rational> lo, hi;
};

inline std::optional<TInterval> intersect(const TInterval& x, const TInterval& y)
{
    TInterval r;
    r.lo = !x.lo ? y.lo : !y.lo ? x.lo : std::optional<Rational>(max(*x.lo, *y.lo));
    r.hi = !x.hi ? y.hi : !y.hi ? x.hi : std::optional<Rational>(min(*x.hi, *y.hi));
    if (r.lo && r.hi && *r.hi < *r.lo) return std::nullopt;
    return r;
}

/// {t : (s0 + s1 t)(g0 + g1 t) <= 0} as a union of closed intervals.
inline std::vector<TInterval> product_nonpositive(const Rational& s0, const Rational& s1, const Rational& g0,
                                                  const Rational& g1)
{
    auto ray_nonpositive = [](const Rational& c0, const Rational& c1) -> std::vector<TInterval> {
        // c0 + c1 t <= 0
        if (c1.is_zero()) return c0.sign() <= 0 ? std::vector<TInterval>{{}} : std::vector<TInterval>{};
        Rational root = -c0 / c1;
        return c1.sign() > 0 ? std::vector<TInterval>{{std::nullopt, root}} : std::vector<TInterval>{{root, std::nullopt}};
    };
    if (s1.is_zero() && s0.is_zero()) return {{}};
    if (g1.is_zero() && g0.is_zero()) return {{}};
    if (s1.is_zero()) return s0.sign() > 0 ? ray_nonpositive(g0, g1) : ray_nonpositive(-g0, -g1);
    if (g1.is_zero()) return g0.sign() > 0 ? ray_nonpositive(s0, s1) : ray_nonpositive(-s0, -s1);
    Rational rs = -s0 / s1, rg = -g0 / g1;
    Rational lo = min(rs, rg), hi = max(rs, rg);
    if ((s1 * g1).sign() > 0) return {{lo, hi}};
    return {{std::nullopt, lo}, {hi, std::nullopt}};
}

struct RawSegment {
    int a, b;
    Rational lo, hi;
    Point x0, x1; // X(lo), X(hi)
};

/// Crossing point X(t) of the support lines of moving edges a and b, as X(0) + t * dX.
inline std::pair<Point, Vector> crossing_track(const CposPolygon& p, int a, int b)
{
    const int n = p.n();
    Line la0{p.vertex(a), p.edge(a)}, lb0{p.vertex(b), p.edge(b)};
    Line la1{p.vertex(a + n), p.edge(a)}, lb1{p.vertex(b + n), p.edge(b)};
    Point x0 = *line_intersect(la0, lb0), x1 = *line_intersect(la1, lb1);
    return {x0, x1 - x0};
}

/// Sets of t where X(t) lies on the closed moving edge k.
inline std::vector<TInterval> inside_edge(const CposPolygon& p, int k, const Point& x0, const Vector& dx)
{
    const int n = p.n();
    Vector e = p.edge(k);
    Rational ee = dot(e, e);
    // X(t) - P_k(t) = (x0 - P_k) + t (dx - (P_{k+n} - P_k)); sigma is its e-coordinate.
    Vector c0 = x0 - p.vertex(k), c1 = dx - (p.vertex(k + n) - p.vertex(k));
    Rational s0 = dot(c0, e) / ee, s1 = dot(c1, e) / ee;
    // Edge scale 1 - t (1 + alpha).
    Rational alpha = opposite_ratio(p, k);
    Rational k0(1), k1 = -(Rational(1) + alpha);
    return product_nonpositive(s0, s1, s0 - k0, s1 - k1);
}

inline std::vector<RawSegment> raw_ess_segments(const CposPolygon& p)
{
    const int m = p.size(), n = p.n();
    std::vector<RawSegment> out;
    for (int a = 1; a <= m; ++a)
        for (int b = a + 2; b <= m; ++b) {
            if (b == a + n || wrap(b + 1, m) == a) continue;
            auto [x0, dx] = crossing_track(p, a, b);
            for (const auto& ia : inside_edge(p, a, x0, dx))
                for (const auto& ib : inside_edge(p, b, x0, dx)) {
                    auto r = intersect(ia, ib);
                    if (!r) continue;
                    if (!r->lo || !r->hi)
                        throw GeometryError(ErrorKind::NonGenericCoincidence, "unbounded self-intersection track", a);
                    if (*r->lo == *r->hi) continue;
                    out.push_back({a, b, *r->lo, *r->hi, x0 + *r->lo * dx, x0 + *r->hi * dx});
                }
        }
    return out;
}

struct EndLink {
    std::optional<EssEndpoint> terminal;
    int vertex = 0;     // diagonal index for a junction
    std::size_t next = 0;
    int next_end = 0;   // 0: lo end, 1: hi end
};

} // namespace detail

/// All branches of the equidistant symmetry set, traced segment by segment.
/// Mirror images (pair (a+n, b+n) at level 1-t) are reported once.
inline std::vector<EssBranch> ess_trace(const CposPolygon& p)
{
    using namespace detail;
    if (is_symmetric(p)) return {};
    if (css_degeneracy(p)) throw GeometryError(ErrorKind::DegenerateCss, "CSS has a repeated vertex");
    const int m = p.size(), n = p.n();
    const auto raw = raw_ess_segments(p);

    std::map<std::tuple<int, int, Rational, Rational>, std::size_t> index;
    std::map<std::pair<int, int>, std::vector<std::size_t>> by_pair;
    for (std::size_t s = 0; s < raw.size(); ++s) {
        index[{raw[s].a, raw[s].b, raw[s].lo, raw[s].hi}] = s;
        by_pair[{raw[s].a, raw[s].b}].push_back(s);
    }
    auto normal_pair = [&](int a, int b) {
        a = wrap(a, m);
        b = wrap(b, m);
        return a < b ? std::pair{a, b} : std::pair{b, a};
    };
    auto mirror = [&](std::size_t s) {
        auto [a, b] = normal_pair(raw[s].a + n, raw[s].b + n);
        auto it = index.find({a, b, Rational(1) - raw[s].hi, Rational(1) - raw[s].lo});
        if (it == index.end()) throw GeometryError(ErrorKind::NonGenericCoincidence, "ESS segment without mirror image", raw[s].a);
        return it->second;
    };

    std::vector<std::array<EndLink, 2>> links(raw.size());
    for (std::size_t s = 0; s < raw.size(); ++s)
        for (int end = 0; end < 2; ++end) {
            const auto& r = raw[s];
            const Rational& t = end == 0 ? r.lo : r.hi;
            const Point& x = end == 0 ? r.x0 : r.x1;
            std::vector<std::pair<int, int>> hit; // (vertex, owning edge)
            for (auto [k, owner] : {std::pair{r.a, r.a}, {r.a + 1, r.a}, {r.b, r.b}, {r.b + 1, r.b}})
                if (equidistant_vertex(p, k, t) == x) hit.push_back({wrap(k, m), owner});
            EndLink link;
            if (hit.size() == 2 && hit[0].second != hit[1].second) {
                int gap = wrap(hit[1].first - hit[0].first, m);
                if (gap == 1 || gap == m - 1) link.terminal = EssEndpoint::CssCusp;
                else if (gap == n) link.terminal = EssEndpoint::AeCusp;
            }
            if (hit.size() == 1) {
                auto [k, owner] = hit[0];
                int other = owner == r.a ? r.b : r.a;
                int replaced = wrap(k, m) == wrap(owner, m) ? owner - 1 : owner + 1;
                auto [na, nb] = normal_pair(replaced, other);
                link.vertex = k;
                bool found = false;
                if (auto it = by_pair.find({na, nb}); it != by_pair.end())
                    for (std::size_t qi : it->second) {
                        const auto& q = raw[qi];
                        for (int qe = 0; qe < 2; ++qe)
                            if ((qe == 0 ? q.lo : q.hi) == t && (qe == 0 ? q.x0 : q.x1) == x) {
                                if (found) throw GeometryError(ErrorKind::NonGenericCoincidence, "ambiguous ESS continuation", k);
                                found = true;
                                link.next = qi;
                                link.next_end = qe;
                            }
                    }
                if (!found) throw GeometryError(ErrorKind::NonGenericCoincidence, "ESS segment has no continuation", k);
            } else if (!link.terminal) {
                throw GeometryError(ErrorKind::NonGenericCoincidence, "moving edges meet at a vertex coincidence", r.a);
            }
            links[s][static_cast<std::size_t>(end)] = link;
        }

    auto css = central_symmetry_set(p).edges();
    auto on_css = [&](const Point& x) {
        for (const auto& e : css)
            if (point_on_segment(x, e)) return true;
        return false;
    };

    std::vector<bool> visited(raw.size(), false);
    std::vector<EssBranch> branches;
    auto walk = [&](std::size_t start, int enter_end, bool closed) {
        EssBranch br;
        br.closed = closed;
        if (!closed) br.endpoints[0] = links[start][static_cast<std::size_t>(enter_end)].terminal;
        std::size_t cur = start;
        int in = enter_end;
        for (std::size_t steps = 0;; ++steps) {
            if (steps > raw.size()) throw GeometryError(ErrorKind::NonGenericCoincidence, "ESS chain does not close");
            visited[cur] = true;
            visited[mirror(cur)] = true;
            const auto& r = raw[cur];
            int out = 1 - in;
            EssSegment seg{r.a, r.b, in == 0 ? r.lo : r.hi, in == 0 ? r.hi : r.lo,
                           in == 0 ? Segment{r.x0, r.x1} : Segment{r.x1, r.x0}};
            br.segments.push_back(seg);
            const auto& link = links[cur][static_cast<std::size_t>(out)];
            if (link.terminal) {
                br.endpoints[1] = link.terminal;
                break;
            }
            const auto& nr = raw[link.next];
            Point far_next = link.next_end == 0 ? nr.x1 : nr.x0;
            Line d = p.diagonal(link.vertex);
            int side_here = orient(d.base, d.base + d.dir, seg.seg.a);
            int side_next = orient(d.base, d.base + d.dir, far_next);
            br.junctions.push_back({seg.seg.b, link.vertex, seg.t_to, side_here * side_next > 0, on_css(seg.seg.b)});
            cur = link.next;
            in = link.next_end;
            if (closed && cur == start) break;
        }
        branches.push_back(std::move(br));
    };
    for (std::size_t s = 0; s < raw.size(); ++s)
        for (int end = 0; end < 2; ++end)
            if (!visited[s] && links[s][static_cast<std::size_t>(end)].terminal) walk(s, end, false);
    for (std::size_t s = 0; s < raw.size(); ++s)
        if (!visited[s]) walk(s, 0, true);
    return branches;
}

/// Self-intersection points of P_t between non-adjacent, non-parallel moving edges.
inline std::vector<Point> equidistant_self_intersections(const CposPolygon& p, const Rational& t)
{
    const int m = p.size(), n = p.n();
    std::vector<Point> pts;
    for (int i = 1; i <= m; ++i) pts.push_back(equidistant_vertex(p, i, t));
    std::vector<std::array<double, 4>> box;
    for (int i = 0; i < m; ++i) {
        double ax = pts[static_cast<std::size_t>(i)].x.to_double(), ay = pts[static_cast<std::size_t>(i)].y.to_double();
        double bx = pts[static_cast<std::size_t>((i + 1) % m)].x.to_double(),
               by = pts[static_cast<std::size_t>((i + 1) % m)].y.to_double();
        box.push_back({std::min(ax, bx), std::max(ax, bx), std::min(ay, by), std::max(ay, by)});
    }
    std::vector<Point> out;
    for (int a = 1; a <= m; ++a)
        for (int b = a + 2; b <= m; ++b) {
            if (b == a + n || wrap(b + 1, m) == a) continue;
            const auto &ba = box[static_cast<std::size_t>(a - 1)], &bb = box[static_cast<std::size_t>(b - 1)];
            constexpr double slack = 1e-9;
            if (ba[1] + slack < bb[0] || bb[1] + slack < ba[0] || ba[3] + slack < bb[2] || bb[3] + slack < ba[2]) continue;
            Segment sa{pts[static_cast<std::size_t>(a - 1)], pts[static_cast<std::size_t>(a % m)]};
            Segment sb{pts[static_cast<std::size_t>(b - 1)], pts[static_cast<std::size_t>(b % m)]};
            if (auto x = segment_intersection(sa, sb)) out.push_back(*x);
        }
    return out;
}

} // namespace cpos
