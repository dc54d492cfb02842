#pragma once

#include "cpos/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cpos {

/// Cyclic index reduction into 1..m.
constexpr int wrap(int i, int m) { return ((i - 1) % m + m) % m + 1; }

/// A convex 2n-gon with parallel opposite sides, positively oriented, n >= 3.
/// Vertex and edge accessors are 1-based and cyclic modulo 2n: vertex(i) is P_i and
/// edge(i) is the edge from P_i to P_{i+1}.
class CposPolygon {
public:
    int n() const noexcept { return static_cast<int>(pts_.size() / 2); }
    int size() const noexcept { return static_cast<int>(pts_.size()); }

    const Point& vertex(int i) const { return pts_[static_cast<std::size_t>(wrap(i, size()) - 1)]; }
    Vector edge(int i) const { return vertex(i + 1) - vertex(i); }
    const std::vector<Point>& vertices() const noexcept { return pts_; }

    /// Midpoint of the great diagonal P_i P_{i+n}.
    Point diagonal_midpoint(int i) const { return midpoint(vertex(i), vertex(i + n())); }
    Line diagonal(int i) const { return Line::through(vertex(i), vertex(i + n())); }

    Rational area() const { return polygon_area(pts_); }

    friend bool operator==(const CposPolygon&, const CposPolygon&) = default;

private:
    explicit CposPolygon(std::vector<Point> pts) : pts_(std::move(pts)) {}
    friend CposPolygon validate(std::vector<Point> points);

    std::vector<Point> pts_;
};

/// Checks every defining invariant and returns the polygon, or throws a
/// GeometryError naming the first violation (index is 1-based).
inline CposPolygon validate(std::vector<Point> points)
{
    const int m = static_cast<int>(points.size());
    if (m % 2 != 0) throw GeometryError(ErrorKind::OddCount, "vertex count must be even");
    if (m < 6) throw GeometryError(ErrorKind::TooSmall, "need at least 6 vertices (n >= 3)");
    const int n = m / 2;
    auto P = [&](int i) -> const Point& { return points[static_cast<std::size_t>(wrap(i, m) - 1)]; };
    auto e = [&](int i) { return P(i + 1) - P(i); };

    for (int i = 1; i <= n; ++i) {
        Vector a = e(i), b = e(i + n);
        if (a.is_zero() || b.is_zero() || !cross(a, b).is_zero() || dot(a, b).sign() >= 0)
            throw GeometryError(ErrorKind::NotParallelOpposite,
                                "edge " + std::to_string(i + n) + " is not antiparallel to edge " + std::to_string(i), i);
    }

    bool all_negative = true;
    for (int i = 1; i <= m; ++i)
        if (cross(e(i), e(i + 1)).sign() >= 0) all_negative = false;
    if (all_negative) throw GeometryError(ErrorKind::WrongOrientation, "polygon is clockwise");

    for (int i = 1; i <= m; ++i)
        if (cross(e(i), e(i + 1)).sign() <= 0)
            throw GeometryError(ErrorKind::NotConvex, "turn at vertex " + std::to_string(wrap(i + 1, m)) + " is not strictly left", i);

    // Local convexity alone admits polygons that wind several times.
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (cross(e(i), e(j)).sign() <= 0)
                throw GeometryError(ErrorKind::NotConvex, "edges " + std::to_string(i) + " and " + std::to_string(j) + " turn more than half a revolution", j);

    return CposPolygon(std::move(points));
}

inline CposPolygon translated(const CposPolygon& p, const Vector& by)
{
    std::vector<Point> pts;
    for (const auto& v : p.vertices()) pts.push_back(v + by);
    return validate(std::move(pts));
}

/// Centre of point symmetry, if P_i + P_{i+n} is the same for all i.
inline std::optional<Point> is_symmetric(const CposPolygon& p)
{
    Point c = p.diagonal_midpoint(1);
    for (int i = 2; i <= p.n(); ++i)
        if (p.diagonal_midpoint(i) != c) return std::nullopt;
    return c;
}

/// The bracket [P_{i+1} - P_i, P_i - P_{i-1}].
inline Rational turn_bracket(const CposPolygon& p, int i) { return cross(p.edge(i), p.edge(i - 1)); }

inline bool is_equal_area(const CposPolygon& p)
{
    Rational first = turn_bracket(p, 1);
    for (int i = 2; i <= p.size(); ++i)
        if (turn_bracket(p, i) != first) return false;
    return true;
}

/// alpha_i with e(i+n) = -alpha_i e(i).
inline Rational opposite_ratio(const CposPolygon& p, int i)
{
    Vector a = p.edge(i), b = p.edge(i + p.n());
    return -dot(a, b) / dot(a, a);
}

struct EqualAreaClass {
    int n;
    Rational alpha; // ratio on edge 1; the ratios alternate alpha, 1/alpha
    bool symmetric;
};

/// Places an equal-area polygon in the symmetric / alternating-ratio classification.
/// Returns nullopt for polygons that are not equal-area.
inline std::optional<EqualAreaClass> classify_equal_area(const CposPolygon& p)
{
    if (!is_equal_area(p)) return std::nullopt;
    Rational alpha = opposite_ratio(p, 1);
    return EqualAreaClass{p.n(), alpha, alpha == Rational(1)};
}

/// Builds the 2n-gon with sides w_i, -alpha w_i alternating by parity of i, starting at `base`.
/// Requires n odd, [w_i, w_{i+1}] negative and the same for every i (cyclically),
/// sum w_i = 0 and alpha > 0. For n = 3 the equal brackets follow from the zero sum.
inline CposPolygon make_equal_area_nonsymmetric(const std::vector<Vector>& w, const Rational& alpha, const Point& base)
{
    const int n = static_cast<int>(w.size());
    if (n < 3 || n % 2 == 0)
        throw GeometryError(ErrorKind::Precondition, "construction needs an odd number n >= 3 of side vectors");
    if (alpha.sign() <= 0) throw GeometryError(ErrorKind::Precondition, "alpha must be positive");
    Vector sum{0, 0};
    const Rational turn = cross(w[0], w[1]);
    for (int i = 0; i < n; ++i) {
        sum = sum + w[static_cast<std::size_t>(i)];
        Rational c = cross(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>((i + 1) % n)]);
        if (c.sign() >= 0) throw GeometryError(ErrorKind::Precondition, "[w_i, w_i+1] must be negative", i + 1);
        if (c != turn) throw GeometryError(ErrorKind::Precondition, "[w_i, w_i+1] must be the same for every i", i + 1);
    }
    if (!sum.is_zero()) throw GeometryError(ErrorKind::Precondition, "side vectors must sum to zero");

    std::vector<Vector> sides(static_cast<std::size_t>(2 * n));
    for (int i = 1; i <= n; ++i) {
        const Vector& wi = w[static_cast<std::size_t>(i - 1)];
        bool odd = i % 2 == 1;
        sides[static_cast<std::size_t>(i - 1)] = odd ? wi : -(alpha * wi);
        sides[static_cast<std::size_t>(i - 1 + n)] = odd ? -(alpha * wi) : wi;
    }
    std::vector<Point> pts{base};
    for (int k = 0; k + 1 < 2 * n; ++k) pts.push_back(pts.back() + sides[static_cast<std::size_t>(k)]);
    return validate(std::move(pts));
}

/// Deterministic random CPOS 2n-gon. Directions are integer vectors in an open
/// half-plane in counterclockwise order; side lengths are projected onto the
/// closure constraint sum (t_i - s_i) w_i = 0 and resampled until positive.
inline CposPolygon random_cpos(int n, std::uint64_t seed)
{
    if (n < 3) throw GeometryError(ErrorKind::Precondition, "random_cpos needs n >= 3");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::uniform_int_distribution<int> length(1, 12);
    std::uniform_int_distribution<int> offset(-4, 4);
    constexpr double radius = 24.0;

    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> theta(static_cast<std::size_t>(n));
        for (auto& t : theta) t = angle(rng);
        std::sort(theta.begin(), theta.end());
        std::vector<Vector> w;
        for (double t : theta)
            w.push_back({Rational(static_cast<long>(std::lround(radius * std::cos(t)))),
                         Rational(static_cast<long>(std::lround(radius * std::sin(t))))});
        bool ordered = cross(w.front(), w.back()).sign() > 0;
        for (int i = 0; i + 1 < n && ordered; ++i)
            ordered = cross(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i + 1)]).sign() > 0;
        if (!ordered) continue;

        // x = (t_1..t_n, s_1..s_n); constraint A x = 0 with A = [w | -w].
        std::vector<Rational> x;
        for (int k = 0; k < 2 * n; ++k) x.emplace_back(length(rng));
        Rational gxx, gxy, gyy; // A A^T / 2
        Vector ax{0, 0};
        for (int i = 0; i < n; ++i) {
            const Vector& wi = w[static_cast<std::size_t>(i)];
            gxx += wi.x * wi.x;
            gxy += wi.x * wi.y;
            gyy += wi.y * wi.y;
            Rational c = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i + n)];
            ax = ax + c * wi;
        }
        // (A A^T)^{-1} A x = (2G)^{-1} ax
        Rational det = Rational(2) * (gxx * gyy - gxy * gxy);
        Vector lam{(gyy * ax.x - gxy * ax.y) / det, (gxx * ax.y - gxy * ax.x) / det};
        bool positive = true;
        for (int i = 0; i < n; ++i) {
            Rational corr = dot(w[static_cast<std::size_t>(i)], lam);
            x[static_cast<std::size_t>(i)] -= corr;
            x[static_cast<std::size_t>(i + n)] += corr;
        }
        for (const auto& v : x) positive = positive && v.sign() > 0;
        if (!positive) continue;

        std::vector<Point> pts{Point{Rational(offset(rng)), Rational(offset(rng))}};
        for (int k = 0; k + 1 < 2 * n; ++k) {
            const Vector& wi = w[static_cast<std::size_t>(k % n)];
            Vector side = k < n ? x[static_cast<std::size_t>(k)] * wi : -(x[static_cast<std::size_t>(k)] * wi);
            pts.push_back(pts.back() + side);
        }
        try {
            return validate(std::move(pts));
        } catch (const GeometryError&) {
            continue;
        }
    }
    throw GeometryError(ErrorKind::GeneratorExhausted, "random_cpos: no valid polygon after 1000 attempts");
}

} // namespace cpos
