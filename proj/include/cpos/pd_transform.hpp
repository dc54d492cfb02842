#pragma once

#include "cpos/evolute.hpp"

#include <optional>
#include <vector>

namespace cpos {

/// v(i+1/2) = M_{i+1} - M_i, periodic with period n.
inline Vector evolute_step(const CposPolygon& p, int i) { return p.diagonal_midpoint(i + 1) - p.diagonal_midpoint(i); }

/// u_i = P_i - M_i, so u_{i+n} = -u_i.
inline Vector half_diagonal(const CposPolygon& p, int i) { return p.vertex(i) - p.diagonal_midpoint(i); }

struct PdTrace {
    Rational mu;                   // mu(1/2)
    std::vector<Rational> mu_seq;  // mu(i+1/2), i = 1..2n
    std::vector<Point> q;          // Q(i+1/2), i = 1..2n
    std::vector<Rational> beta;    // mu(i+1/2) - mu(i+n+1/2), i = 1..n
    std::vector<Rational> gamma;   // mu(i+1/2) + mu(i+n+1/2), i = 1..n
    Rational closure_residue;      // mu(2n+1/2) - mu(1/2)

    const Rational& mu_at(int i) const
    {
        const int m = static_cast<int>(mu_seq.size());
        return i == 0 ? mu : mu_seq[static_cast<std::size_t>(wrap(i, m) - 1)];
    }
    /// The transform as a validated polygon; throws if it is not convex for this mu.
    CposPolygon q_polygon() const { return validate(q); }
    /// Midpoints of the great diagonals of Q.
    std::vector<Point> evolute() const
    {
        std::vector<Point> out;
        const std::size_t n = q.size() / 2;
        for (std::size_t k = 0; k < n; ++k) out.push_back(midpoint(q[k], q[k + n]));
        return out;
    }
};

/// Runs mu(i+1/2)[v(i+1/2),u_i] + (1 - mu(i-1/2))[v(i-1/2),u_i] = 0 from mu(1/2) = mu
/// for i = 1..2n and places Q(i+1/2) = M_i + mu(i+1/2) v(i+1/2).
inline PdTrace pd_transform(const CposPolygon& p, const Rational& mu)
{
    if (is_symmetric(p)) throw GeometryError(ErrorKind::SymmetricInput, "the transform needs a non-symmetric polygon");
    const int m = p.size(), n = p.n();
    PdTrace tr{mu, {}, {}, {}, {}, {}};
    Rational prev = mu;
    for (int i = 1; i <= m; ++i) {
        Vector u = half_diagonal(p, i);
        Rational pivot = cross(evolute_step(p, i), u);
        if (pivot.is_zero()) throw GeometryError(ErrorKind::ZeroPivot, "[v(i+1/2), u_i] vanishes", i);
        Rational cur = -(Rational(1) - prev) * cross(evolute_step(p, i - 1), u) / pivot;
        tr.mu_seq.push_back(cur);
        tr.q.push_back(p.diagonal_midpoint(i) + cur * evolute_step(p, i));
        prev = cur;
    }
    tr.closure_residue = prev - mu;
    for (int i = 1; i <= n; ++i) {
        tr.beta.push_back(tr.mu_at(i) - tr.mu_at(i + n));
        tr.gamma.push_back(tr.mu_at(i) + tr.mu_at(i + n));
    }
    return tr;
}

/// Areas on either side of the great diagonal d_i: `first` is the region through
/// P_{i+1}..P_{i+n-1}.
struct AreaSplit {
    int index;
    Rational area_first, area_second;
    Rational diff() const { return area_second - area_first; }
};

inline AreaSplit diagonal_area_split(const CposPolygon& p, int i)
{
    std::vector<Point> first, second;
    for (int k = i; k <= i + p.n(); ++k) first.push_back(p.vertex(k));
    for (int k = i + p.n(); k <= i + p.size(); ++k) second.push_back(p.vertex(k));
    return {wrap(i, p.size()), polygon_area(first), polygon_area(second)};
}

/// 2 * sum_{j=1..n} [v(j+1/2), u_j].
inline Rational evolute_moment(const CposPolygon& p)
{
    Rational s;
    for (int j = 1; j <= p.n(); ++j) s += cross(evolute_step(p, j), half_diagonal(p, j));
    return Rational(2) * s;
}

/// Parameter m with chord midpoint M_i + (m/2) e_i for the chord from
/// P_i + s e_i to P_{i+n} + r e_{i+n} (m = s - r alpha_i) that halves the area.
inline Rational half_area_parameter(const CposPolygon& p, int i)
{
    const Rational cut0 = diagonal_area_split(p, i).area_first;
    const Rational slope = -polygon_area(std::vector<Point>{p.vertex(i), p.vertex(i + 1), p.vertex(i + p.n())});
    return (p.area() / Rational(2) - cut0) / slope;
}

/// N(i+1/2) for i = 1..n: the midpoint, on the mid-parallel through M_i, of
/// the chord between e(i+1/2) and e(i+n+1/2) cutting the area in half.
inline std::vector<Point> half_area_midpoints(const CposPolygon& p)
{
    std::vector<Point> out;
    for (int i = 1; i <= p.n(); ++i)
        out.push_back(p.diagonal_midpoint(i) + (half_area_parameter(p, i) / Rational(2)) * p.edge(i));
    return out;
}

/// The chord from P_i through N(i+1/2) to P'_i = 2N - P_i on the opposite support
/// line. When P'_i lies on the edge P_{i+n}P_{i+n+1} the chord is real and its
/// two sides are measured by shoelace.
struct HalfAreaChord {
    int index; // 1..2n
    Point n_point;
    Point far_end;
    bool on_opposite_edge;
    Rational area_first, area_second; // only when on_opposite_edge
};

inline std::vector<HalfAreaChord> half_area_chords(const CposPolygon& p)
{
    const int n = p.n();
    auto nps = half_area_midpoints(p);
    std::vector<HalfAreaChord> out;
    for (int i = 1; i <= p.size(); ++i) {
        const Point& np = nps[static_cast<std::size_t>(wrap(i, n) - 1)];
        Point far = np + (np - p.vertex(i));
        HalfAreaChord c{i, np, far, point_on_segment(far, {p.vertex(i + n), p.vertex(i + n + 1)}), {}, {}};
        if (c.on_opposite_edge) {
            std::vector<Point> first, second{far};
            for (int k = i; k <= i + n; ++k) first.push_back(p.vertex(k));
            first.push_back(far);
            for (int k = i + n + 1; k <= i + p.size(); ++k) second.push_back(p.vertex(k));
            c.area_first = polygon_area(first);
            c.area_second = polygon_area(second);
        }
        out.push_back(c);
    }
    return out;
}

struct AeOfQReport {
    std::vector<Point> ae_q;
    std::vector<Point> n_points;
    bool ae_equals_n;
    bool telescoping_holds; // gamma(i+1/2)[v(i+1/2),u_i] = gamma(i-1/2)[v(i-1/2),u_i] - 2[v(i-1/2),u_i]
    bool closure_exact;
    bool beta_antisymmetric; // beta(1/2) = -beta(n+1/2)
};

inline AeOfQReport verify_ae_of_q(const CposPolygon& p, const Rational& mu)
{
    auto tr = pd_transform(p, mu);
    const int n = p.n();
    AeOfQReport r{tr.evolute(), half_area_midpoints(p), false, true, tr.closure_residue.is_zero(), false};
    r.ae_equals_n = r.ae_q == r.n_points;
    auto gamma = [&](int i) { return tr.mu_at(i) + tr.mu_at(i + n); };
    for (int i = 1; i <= p.size(); ++i) {
        Vector u = half_diagonal(p, i);
        Rational lhs = gamma(i) * cross(evolute_step(p, i), u);
        Rational prev_bracket = cross(evolute_step(p, i - 1), u);
        if (lhs != gamma(i - 1) * prev_bracket - Rational(2) * prev_bracket) r.telescoping_holds = false;
    }
    Rational beta_half = tr.mu_at(0) - tr.mu_at(n);
    r.beta_antisymmetric = beta_half == -(tr.mu_at(n) - tr.mu_at(2 * n));
    return r;
}

/// First mu in 1, 2, 4, ... (then -1, -2, -4, ...) whose transform is a valid
/// CPOS polygon containing the area evolute of p strictly inside.
inline Rational choose_convex_mu(const CposPolygon& p)
{
    auto ae = area_evolute(p).points;
    for (int sign : {1, -1}) {
        Rational mu(sign);
        for (int k = 0; k <= 64; ++k, mu = mu * Rational(2)) {
            auto tr = pd_transform(p, mu);
            try {
                auto q = tr.q_polygon();
                bool inside = true;
                for (const auto& x : ae) inside = inside && locate_in_convex(x, q.vertices()) == Containment::Inside;
                if (inside) return mu;
            } catch (const GeometryError&) {
            }
        }
    }
    throw GeometryError(ErrorKind::NotFound, "no convex transform found after 64 doublings");
}

/// mu at which Q collapses onto N traversed twice (beta = 0).
inline Rational collapse_mu(const CposPolygon& p)
{
    // beta(1/2) is affine in mu; two evaluations fix it.
    auto beta = [&](const Rational& mu) {
        auto tr = pd_transform(p, mu);
        return tr.mu_at(0) - tr.mu_at(p.n());
    };
    Rational b0 = beta(Rational(0)), b1 = beta(Rational(1));
    if (b0 == b1) throw GeometryError(ErrorKind::ZeroPivot, "beta does not depend on mu");
    return b0 / (b0 - b1);
}

} // namespace cpos
