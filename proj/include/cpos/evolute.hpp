#pragma once

#include "cpos/polygon.hpp"

#include <optional>
#include <vector>

namespace cpos {

/// Intersection D(i+1/2) of consecutive great diagonals d_i and d_{i+1}.
inline Point css_point(const CposPolygon& p, int i)
{
    auto x = line_intersect(p.diagonal(i), p.diagonal(i + 1));
    if (!x) throw GeometryError(ErrorKind::AdjacentDiagonalsParallel, "great diagonals are parallel", wrap(i, p.size()));
    return *x;
}

/// lambda(i+1/2): parameter of D(i+1/2) along d_i measured from P_i.
inline Rational css_lambda(const CposPolygon& p, int i) { return segment_param(p.diagonal(i), css_point(p, i)); }

/// lambda(i+1/2) for i = 1..2n, in that order.
inline std::vector<Rational> lambda_sequence(const CposPolygon& p)
{
    std::vector<Rational> out;
    for (int i = 1; i <= p.size(); ++i) out.push_back(css_lambda(p, i));
    return out;
}

struct DiagonalFrame {
    int index;
    Line diagonal;        // d_i through P_i and P_{i+n}
    Point mid;            // M_i
    Point css_prev;       // D(i-1/2)
    Point css_next;       // D(i+1/2)
    Rational lambda_prev; // lambda(i-1/2)
    Rational lambda_next; // lambda(i+1/2)

    Rational lambda_hat_next() const { return lambda_next - Rational(1, 2); }
    Rational lambda_hat_prev() const { return lambda_prev - Rational(1, 2); }
};

inline std::vector<DiagonalFrame> diagonal_frames(const CposPolygon& p)
{
    std::vector<DiagonalFrame> frames;
    for (int i = 1; i <= p.n(); ++i)
        frames.push_back({i, p.diagonal(i), p.diagonal_midpoint(i), css_point(p, i - 1), css_point(p, i),
                          css_lambda(p, i - 1), css_lambda(p, i)});
    return frames;
}

/// Ordered chain of points with per-vertex cusp flags. When classification is
/// withheld, `cusps` is empty and `withheld` names the degeneracy.
struct PolyChain {
    std::vector<Point> points;
    bool closed = true;
    std::vector<bool> cusps;
    std::optional<ErrorKind> withheld;

    bool is_point() const { return points.size() == 1; }
    int cusp_count() const
    {
        int c = 0;
        for (bool b : cusps) c += b ? 1 : 0;
        return c;
    }
    std::vector<Segment> edges() const
    {
        std::vector<Segment> out;
        if (points.size() < 2) return out;
        for (std::size_t k = 0; k + 1 < points.size(); ++k) out.push_back({points[k], points[k + 1]});
        if (closed) out.push_back({points.back(), points.front()});
        return out;
    }
};

namespace detail {

inline std::optional<ErrorKind> css_degeneracy(const CposPolygon& p)
{
    for (int i = 1; i <= p.n(); ++i)
        if (css_point(p, i - 1) == css_point(p, i)) return ErrorKind::DegenerateCss;
    return std::nullopt;
}

} // namespace detail

/// Closed chain M_1..M_n. M_i is a cusp when the centred parameters
/// lambda(i-1/2) - 1/2 and lambda(i+1/2) - 1/2 have opposite signs.
inline PolyChain area_evolute(const CposPolygon& p)
{
    PolyChain chain;
    if (auto c = is_symmetric(p)) {
        chain.points = {*c};
        chain.withheld = ErrorKind::DegenerateCss;
        return chain;
    }
    for (int i = 1; i <= p.n(); ++i) chain.points.push_back(p.diagonal_midpoint(i));
    if ((chain.withheld = detail::css_degeneracy(p))) return chain;

    const Rational half(1, 2);
    std::vector<Rational> hat;
    for (int i = 0; i <= p.n(); ++i) {
        hat.push_back(css_lambda(p, i) - half);
        if (hat.back().is_zero()) {
            chain.withheld = ErrorKind::LambdaTie;
            return chain;
        }
    }
    for (int i = 1; i <= p.n(); ++i)
        chain.cusps.push_back((hat[static_cast<std::size_t>(i - 1)] * hat[static_cast<std::size_t>(i)]).sign() < 0);
    return chain;
}

/// Closed chain D(1/2)..D(n-1/2). D(i+1/2) is a cusp when lambda(i+1/2) is a
/// strict local extremum of the cyclic sequence lambda(k+1/2), k = 1..2n.
inline PolyChain central_symmetry_set(const CposPolygon& p)
{
    PolyChain chain;
    if (auto c = is_symmetric(p)) {
        chain.points = {*c};
        chain.withheld = ErrorKind::DegenerateCss;
        return chain;
    }
    for (int i = 0; i < p.n(); ++i) chain.points.push_back(css_point(p, i));
    auto lam = lambda_sequence(p);
    const int m = p.size();
    auto at = [&](int i) -> const Rational& { return lam[static_cast<std::size_t>(wrap(i, m) - 1)]; };
    for (int i = 1; i <= m; ++i)
        if (at(i) == at(i + 1)) {
            chain.withheld = ErrorKind::PlateauLambda;
            return chain;
        }
    for (int i = 0; i < p.n(); ++i)
        chain.cusps.push_back(((at(i) - at(i - 1)) * (at(i) - at(i + 1))).sign() > 0);
    return chain;
}

/// Throws the withheld diagnostic, if any.
inline const PolyChain& require_classified(const PolyChain& chain)
{
    if (chain.withheld) throw GeometryError(*chain.withheld, "cusp classification withheld for a degenerate configuration");
    return chain;
}

struct EqualAreaMidpointReport {
    bool midpoints_hold;          // 2 M_i = D(i-1/2) + D(i+1/2) for every i
    bool offsets_match;           // every |lambda(i+1/2) - 1/2| equals lambda_tilde
    Rational lambda_tilde;        // (alpha - 1) / (2 (1 + alpha))
    std::vector<Rational> offsets; // lambda(i+1/2) - 1/2, i = 1..n
};

/// For a non-symmetric equal-area polygon, checks that each M_i bisects the
/// CSS edge D(i-1/2) D(i+1/2) and that the offset matches the closed form in alpha.
inline EqualAreaMidpointReport nonsymmetric_equal_area_midpoint_check(const CposPolygon& p)
{
    auto cls = classify_equal_area(p);
    if (!cls || cls->symmetric)
        throw GeometryError(ErrorKind::Precondition, "midpoint check needs a non-symmetric equal-area polygon");
    EqualAreaMidpointReport r{true, true, (cls->alpha - 1) / (Rational(2) * (cls->alpha + 1)), {}};
    for (const auto& f : diagonal_frames(p)) {
        if (midpoint(f.css_prev, f.css_next) != f.mid) r.midpoints_hold = false;
        r.offsets.push_back(f.lambda_hat_next());
        if (abs(f.lambda_hat_next()) != abs(r.lambda_tilde)) r.offsets_match = false;
    }
    return r;
}

} // namespace cpos
