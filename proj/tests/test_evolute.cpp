#include "fixtures.hpp"

#include "cpos/evolute.hpp"

#include <gtest/gtest.h>

using namespace cpos;
using namespace cpos::testing;

namespace {

// Intersection of lines AB and CD from the two-point determinant formula.
Point oracle_intersection(const Point& a, const Point& b, const Point& c, const Point& d)
{
    Rational a1 = b.y - a.y, b1 = a.x - b.x, c1 = a1 * a.x + b1 * a.y;
    Rational a2 = d.y - c.y, b2 = c.x - d.x, c2 = a2 * c.x + b2 * c.y;
    Rational det = a1 * b2 - a2 * b1;
    return {(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
}

// Parameter of a point X on segment AB by projection.
Rational oracle_param(const Point& a, const Point& b, const Point& x) { return dot(x - a, b - a) / dot(b - a, b - a); }

Point oracle_css(const CposPolygon& p, int i)
{
    int n = p.n();
    return oracle_intersection(p.vertex(i), p.vertex(i + n), p.vertex(i + 1), p.vertex(i + 1 + n));
}

} // namespace

TEST(Evolute, HexEa2Points)
{
    auto p = hex_ea2();
    auto ae = area_evolute(p);
    EXPECT_EQ(ae.points, (std::vector<Point>{pt("0", "3/2"), pt("-1/2", "3/2"), pt("-1/2", "2")}));
    auto css = central_symmetry_set(p);
    EXPECT_EQ(css.points, (std::vector<Point>{pt(0, 2), pt(0, 1), pt(-1, 2)}));

    std::vector<Rational> lam;
    for (const char* s : {"1/3", "2/3", "1/3", "2/3", "1/3", "2/3"}) lam.push_back(R(s));
    EXPECT_EQ(lambda_sequence(p), lam);
    EXPECT_EQ(css_lambda(p, 0), R("2/3"));
}

TEST(Evolute, HexEa2AllCusps)
{
    auto p = hex_ea2();
    auto ae = require_classified(area_evolute(p));
    auto css = require_classified(central_symmetry_set(p));
    EXPECT_EQ(ae.cusps, std::vector<bool>(3, true));
    EXPECT_EQ(css.cusps, std::vector<bool>(3, true));
}

TEST(Evolute, HexEa2Frames)
{
    auto frames = diagonal_frames(hex_ea2());
    ASSERT_EQ(frames.size(), 3u);
    EXPECT_EQ(frames[0].css_prev, pt(0, 2));
    EXPECT_EQ(frames[0].css_next, pt(0, 1));
    EXPECT_EQ(frames[2].css_next, pt(0, 2));
    EXPECT_EQ(frames[1].lambda_hat_next(), R("1/6"));
    EXPECT_EQ(frames[0].lambda_hat_next(), R("-1/6"));
    for (const auto& f : frames) EXPECT_EQ(midpoint(f.css_prev, f.css_next), f.mid);
}

TEST(Evolute, SymmetricCollapses)
{
    auto ae = area_evolute(hex_sym());
    auto css = central_symmetry_set(hex_sym());
    EXPECT_EQ(ae.points, std::vector<Point>{pt(0, 0)});
    EXPECT_EQ(css.points, std::vector<Point>{pt(0, 0)});
    EXPECT_TRUE(ae.cusps.empty());
    ASSERT_TRUE(ae.withheld.has_value());
    try {
        require_classified(ae);
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateCss);
    }
}

TEST(Evolute, EqualAreaMidpointCheck)
{
    auto r = nonsymmetric_equal_area_midpoint_check(hex_ea2());
    EXPECT_TRUE(r.midpoints_hold);
    EXPECT_TRUE(r.offsets_match);
    EXPECT_EQ(r.lambda_tilde, R("1/6"));

    const std::vector<Vector> w{{1, 0}, {0, -1}, {-1, 1}};
    auto r3 = nonsymmetric_equal_area_midpoint_check(make_equal_area_nonsymmetric(w, Rational(3), pt(2, 5)));
    EXPECT_TRUE(r3.midpoints_hold);
    EXPECT_TRUE(r3.offsets_match);
    EXPECT_EQ(r3.lambda_tilde, R("1/4"));

    EXPECT_THROW(nonsymmetric_equal_area_midpoint_check(hex_sym()), GeometryError);
    EXPECT_THROW(nonsymmetric_equal_area_midpoint_check(random_cpos(3, 9)), GeometryError);
}

TEST(Evolute, MatchesOracleOnEnsemble)
{
    for (const auto& p : ensemble(100, 3, 8)) {
        for (int i = 1; i <= p.size(); ++i) {
            Point d = oracle_css(p, i);
            EXPECT_EQ(css_point(p, i), d);
            EXPECT_EQ(css_lambda(p, i), oracle_param(p.vertex(i), p.vertex(i + p.n()), d));
        }
    }
}

TEST(Evolute, LambdaComplementAndOppositeCoincidence)
{
    for (const auto& p : ensemble(100, 3, 8)) {
        for (int i = 1; i <= p.n(); ++i) {
            EXPECT_EQ(css_point(p, i + p.n()), css_point(p, i));
            EXPECT_EQ(css_lambda(p, i + p.n()), Rational(1) - css_lambda(p, i));
            // Homothety: D(i+1/2) sits at the same parameter along d_{i+1}, measured from P_{i+1}.
            EXPECT_EQ(oracle_param(p.vertex(i + 1), p.vertex(i + 1 + p.n()), css_point(p, i)), css_lambda(p, i));
        }
    }
}

TEST(Evolute, CuspParityOnEnsemble)
{
    int classified = 0;
    for (const auto& p : ensemble(200, 3, 8)) {
        auto ae = area_evolute(p);
        auto css = central_symmetry_set(p);
        if (ae.withheld || css.withheld) continue;
        ++classified;
        EXPECT_EQ(ae.cusp_count() % 2, 1);
        EXPECT_EQ(css.cusp_count() % 2, 1);
        EXPECT_GE(ae.cusp_count(), 3);
        EXPECT_GE(css.cusp_count(), ae.cusp_count());
    }
    EXPECT_GT(classified, 150);
}

TEST(Evolute, TranslationEquivariance)
{
    Vector by{Rational(7, 3), Rational(-2)};
    for (const auto& p : ensemble(30, 3, 8)) {
        auto q = translated(p, by);
        auto a = area_evolute(p), b = area_evolute(q);
        ASSERT_EQ(a.points.size(), b.points.size());
        for (std::size_t k = 0; k < a.points.size(); ++k) EXPECT_EQ(a.points[k] + by, b.points[k]);
        EXPECT_EQ(a.cusps, b.cusps);
        EXPECT_EQ(lambda_sequence(p), lambda_sequence(q));
    }
}
