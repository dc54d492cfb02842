#pragma once

#include "cpos/error.hpp"
#include "cpos/rational.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace cpos {

struct Vector {
    Rational x, y;

    friend bool operator==(const Vector&, const Vector&) = default;
    Vector operator-() const { return {-x, -y}; }
    friend Vector operator+(const Vector& a, const Vector& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vector operator-(const Vector& a, const Vector& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vector operator*(const Rational& s, const Vector& v) { return {s * v.x, s * v.y}; }
    friend Vector operator/(const Vector& v, const Rational& s) { return {v.x / s, v.y / s}; }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    friend std::ostream& operator<<(std::ostream& os, const Vector& v) { return os << '<' << v.x << ", " << v.y << '>'; }
};

struct Point {
    Rational x, y;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point& a, const Point& b)
    {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
    friend Vector operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator+(const Point& p, const Vector& v) { return {p.x + v.x, p.y + v.y}; }
    friend Point operator-(const Point& p, const Vector& v) { return {p.x - v.x, p.y - v.y}; }
    Vector as_vector() const { return {x, y}; }
    friend std::ostream& operator<<(std::ostream& os, const Point& p) { return os << '(' << p.x << ", " << p.y << ')'; }
};

/// Line through `base` with nonzero direction `dir`.
struct Line {
    Point base;
    Vector dir;

    static Line through(const Point& a, const Point& b) { return {a, b - a}; }
    Point at(const Rational& t) const { return base + t * dir; }
};

struct Segment {
    Point a, b;
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// The determinant bracket [u, v].
inline Rational cross(const Vector& u, const Vector& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const Vector& u, const Vector& v) { return u.x * v.x + u.y * v.y; }

/// Sign of the turn a -> b -> c (positive for counterclockwise).
inline int orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a).sign(); }

inline Point midpoint(const Point& a, const Point& b)
{
    static const Rational half(1, 2);
    return {half * (a.x + b.x), half * (a.y + b.y)};
}

/// a + t (b - a).
inline Point lerp(const Point& a, const Point& b, const Rational& t) { return a + t * (b - a); }

inline bool on_line(const Line& l, const Point& p) { return cross(l.dir, p - l.base).is_zero(); }

/// Unique intersection point, or nullopt when the directions are parallel
/// (coincident or disjoint; callers test collinearity themselves).
inline std::optional<Point> line_intersect(const Line& l1, const Line& l2)
{
    Rational den = cross(l1.dir, l2.dir);
    if (den.is_zero()) return std::nullopt;
    Rational t = cross(l2.base - l1.base, l2.dir) / den;
    return l1.at(t);
}

/// Parameter t with p = base + t dir. Throws NotOnLine if p is off the line.
inline Rational segment_param(const Line& l, const Point& p)
{
    if (l.dir.is_zero()) throw GeometryError(ErrorKind::Precondition, "segment_param: zero direction");
    if (!on_line(l, p)) throw GeometryError(ErrorKind::NotOnLine, "segment_param: point is not on the line");
    Vector d = p - l.base;
    return l.dir.x.is_zero() ? d.y / l.dir.y : d.x / l.dir.x;
}

/// Signed shoelace area, positive for counterclockwise order.
inline Rational polygon_area(std::span<const Point> pts)
{
    if (pts.size() < 3) throw GeometryError(ErrorKind::TooFewPoints, "polygon_area needs at least 3 points");
    Rational twice;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Point& a = pts[k];
        const Point& b = pts[(k + 1) % pts.size()];
        twice += a.x * b.y - a.y * b.x;
    }
    return Rational(1, 2) * twice;
}

/// Closed-segment membership.
inline bool point_on_segment(const Point& p, const Segment& s)
{
    if (orient(s.a, s.b, p) != 0) return false;
    return min(s.a.x, s.b.x) <= p.x && p.x <= max(s.a.x, s.b.x) && min(s.a.y, s.b.y) <= p.y
        && p.y <= max(s.a.y, s.b.y);
}

/// Intersection point of two non-collinear closed segments, if any. Collinear
/// overlapping segments report nullopt; use `segments_overlap` for those.
inline std::optional<Point> segment_intersection(const Segment& s1, const Segment& s2)
{
    Vector d1 = s1.b - s1.a;
    Vector d2 = s2.b - s2.a;
    Rational den = cross(d1, d2);
    if (den.is_zero()) return std::nullopt;
    Rational t = cross(s2.a - s1.a, d2) / den;
    Rational u = cross(s2.a - s1.a, d1) / den;
    if (t.sign() < 0 || t > Rational(1) || u.sign() < 0 || u > Rational(1)) return std::nullopt;
    return s1.a + t * d1;
}

inline bool segments_overlap(const Segment& s1, const Segment& s2)
{
    if (orient(s1.a, s1.b, s2.a) != 0 || orient(s1.a, s1.b, s2.b) != 0) return false;
    return point_on_segment(s2.a, s1) || point_on_segment(s2.b, s1) || point_on_segment(s1.a, s2)
        || point_on_segment(s1.b, s2);
}

enum class Containment { Outside, Boundary, Inside };

/// Point location against a counterclockwise convex polygon.
inline Containment locate_in_convex(const Point& p, std::span<const Point> poly)
{
    bool boundary = false;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        int o = orient(poly[k], poly[(k + 1) % poly.size()], p);
        if (o < 0) return Containment::Outside;
        if (o == 0) boundary = true;
    }
    return boundary ? Containment::Boundary : Containment::Inside;
}

} // namespace cpos

template <>
struct std::hash<cpos::Point> {
    std::size_t operator()(const cpos::Point& p) const
    {
        return p.x.hash() * 1000003u ^ p.y.hash();
    }
};
