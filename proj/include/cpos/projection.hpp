#pragma once

#include "cpos/polygon.hpp"

#include <vector>

namespace cpos {

struct Projection {
    CposPolygon polygon;
    std::vector<Rational> scales; // new length of edge q over its old length, q = 1..2n
    Rational reached;             // fraction of the requested move that was applied
    bool clamped;
};

namespace detail {

/// Least-squares change of the edge scales along one vertex path so that the
/// path's end moves by d. Edge `free_edge` is unpenalized and takes up the
/// component of d along its own direction.
inline void path_correction(const CposPolygon& p, int first, int count, int free_edge, const Vector& d,
                            std::vector<Rational>& delta)
{
    const int m = p.size();
    const Vector ef = p.edge(free_edge);
    Rational norm;
    for (int q = first; q < first + count; ++q)
        if (wrap(q, m) != wrap(free_edge, m)) norm += cross(ef, p.edge(q)) * cross(ef, p.edge(q));
    const Rational c = cross(ef, d) / norm;
    Vector rest = d;
    for (int q = first; q < first + count; ++q) {
        if (wrap(q, m) == wrap(free_edge, m)) continue;
        Rational dq = c * cross(ef, p.edge(q));
        delta[static_cast<std::size_t>(wrap(q, m) - 1)] = dq;
        rest = rest - dq * p.edge(q);
    }
    // rest is parallel to ef by construction.
    delta[static_cast<std::size_t>(wrap(free_edge, m) - 1)] = ef.x.is_zero() ? rest.y / ef.y : rest.x / ef.x;
}

} // namespace detail

/// Moves vertex k towards `target` keeping every edge direction and the
/// opposite vertex P_{k+n}. The two paths from P_{k+n} to P_k absorb the move
/// separately: the edge at P_k on each path is free and the other edge scales
/// change as little as possible in least squares. If some edge would shrink
/// to zero, the move is cut back to 63/64 of the largest feasible fraction.
inline Projection project_vertex(const CposPolygon& p, int k, const Point& target)
{
    const int m = p.size(), n = p.n();
    const Vector d = target - p.vertex(k);
    std::vector<Rational> delta(static_cast<std::size_t>(m));
    detail::path_correction(p, k + n, n, k - 1, d, delta);
    detail::path_correction(p, k, n, k, -d, delta);

    Rational reach(1);
    for (const auto& dq : delta)
        if (Rational(1) + dq <= Rational(0)) reach = min(reach, Rational(-1) / dq);
    const bool clamped = reach < Rational(1);
    if (clamped) reach = reach * Rational(63, 64);

    std::vector<Rational> scales;
    for (const auto& dq : delta) scales.push_back(Rational(1) + reach * dq);
    std::vector<Point> pts(static_cast<std::size_t>(m));
    Point cur = p.vertex(k + n);
    for (int q = k + n; q < k + n + m; ++q) {
        pts[static_cast<std::size_t>(wrap(q, m) - 1)] = cur;
        cur = cur + scales[static_cast<std::size_t>(wrap(q, m) - 1)] * p.edge(q);
    }
    return {validate(pts), scales, reach, clamped};
}

} // namespace cpos
