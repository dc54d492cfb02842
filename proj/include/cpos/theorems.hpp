#pragma once

#include "cpos/io.hpp"

#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cpos {

enum class CheckStatus { Pass, Fail, Skipped };

inline const char* to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

struct CheckResult {
    std::string name;
    CheckStatus status;
    std::string detail;
};

namespace theorems_detail {

struct Outcome {
    CheckStatus status = CheckStatus::Pass;
    std::ostringstream detail;

    void fail(const std::string& why)
    {
        if (status == CheckStatus::Pass) detail << why;
        status = CheckStatus::Fail;
    }
    void skip(const std::string& why)
    {
        status = CheckStatus::Skipped;
        detail << why;
    }
};

inline std::pair<Point, Point> unordered(const Segment& s) { return s.b < s.a ? std::pair{s.b, s.a} : std::pair{s.a, s.b}; }

inline std::vector<Point> cusp_points(const PolyChain& c)
{
    std::vector<Point> out;
    for (std::size_t k = 0; k < c.cusps.size(); ++k)
        if (c.cusps[k]) out.push_back(c.points[k]);
    return out;
}

inline bool on_any_branch(const std::vector<EssBranch>& branches, const Point& x)
{
    for (const auto& br : branches)
        for (const auto& s : br.segments)
            if (point_on_segment(x, s.seg)) return true;
    return false;
}

inline void cusp_counts(const CposPolygon& p, Outcome& o)
{
    if (is_symmetric(p)) return o.skip("symmetric: AE and CSS are the centre");
    auto ae = area_evolute(p), css = central_symmetry_set(p);
    if (ae.withheld || css.withheld)
        return o.skip(std::string("classification withheld: ") + std::string(to_string(ae.withheld ? *ae.withheld : *css.withheld)));
    const int a = ae.cusp_count(), c = css.cusp_count();
    o.detail << "AE " << a << ", CSS " << c;
    if (a % 2 == 0 || c % 2 == 0) o.fail("; even cusp count");
    if (a < 3) o.fail("; fewer than 3 AE cusps");
    if (c < a) o.fail("; fewer CSS cusps than AE cusps");
}

inline void equal_area_midpoints(const CposPolygon& p, Outcome& o)
{
    auto cls = classify_equal_area(p);
    if (!cls) return o.skip("not equal-area");
    if (cls->symmetric) return o.skip("symmetric");
    auto r = nonsymmetric_equal_area_midpoint_check(p);
    o.detail << "alpha " << cls->alpha << ", lambda~ " << r.lambda_tilde;
    if (!r.midpoints_hold) o.fail("; 2 M_i differs from D(i-1/2) + D(i+1/2)");
    if (!r.offsets_match) o.fail("; offsets differ from lambda~");
}

inline void jump_law(const CposPolygon& p, Outcome& o)
{
    if (is_symmetric(p)) return o.skip("symmetric: no AE edges");
    auto r = verify_jump_law(p);
    o.detail << r.samples.size() << " straddles";
    for (const auto& s : r.samples)
        if (!s.pass) {
            std::ostringstream why;
            why << "; N goes " << s.n_minus << " -> " << s.n_plus << " across AE edge " << s.edge;
            o.fail(why.str());
        }
}

inline void cusp_locus_is_css(const CposPolygon& p, Outcome& o)
{
    if (is_symmetric(p)) return o.skip("symmetric: the locus is empty");
    auto css = central_symmetry_set(p);
    if (css.withheld) return o.skip("CSS degenerate");
    std::set<std::pair<Point, Point>> expected, got;
    for (const auto& e : css.edges()) expected.insert(unordered(e));
    for (const auto& s : cusp_locus(p))
        if (!s.empty()) got.insert(unordered(s.swept));
    if (got != expected) o.fail("swept segments differ from CSS edges");
    for (int i = 1; i <= p.size(); ++i) {
        Rational a = css_lambda(p, i - 1), b = css_lambda(p, i);
        Rational lo = min(a, b), hi = max(a, b);
        for (const auto& t : {lo, hi, (lo + hi) / Rational(2), lo - Rational(1, 7), hi + Rational(1, 7)})
            if ((cusp_function(p, i, t).sign() < 0) != (lo < t && t < hi)) o.fail("cusp window mismatch");
    }
    o.detail << expected.size() << " CSS edges";
}

inline void pd_transform_evolute(const CposPolygon& p, Outcome& o)
{
    if (is_symmetric(p)) return o.skip("symmetric");
    std::vector<Rational> mus{Rational(2), Rational(3), Rational(10), Rational(-7, 3)};
    mus.push_back(collapse_mu(p));
    for (const auto& mu : mus) {
        auto r = verify_ae_of_q(p, mu);
        if (!r.closure_exact) o.fail("closure residue nonzero at mu " + mu.str());
        if (!r.ae_equals_n) o.fail("AE(Q) differs from N at mu " + mu.str());
        if (!r.telescoping_holds) o.fail("gamma relation fails at mu " + mu.str());
        if (!r.beta_antisymmetric) o.fail("beta not antisymmetric at mu " + mu.str());
    }
    o.detail << mus.size() << " values of mu";
}

inline void half_area_chords_split(const CposPolygon& p, Outcome& o)
{
    int hits = 0;
    for (const auto& c : half_area_chords(p)) {
        if (!c.on_opposite_edge) continue;
        ++hits;
        if (c.area_first != p.area() / Rational(2) || c.area_second != p.area() / Rational(2))
            o.fail("chord " + std::to_string(c.index) + " does not halve the area");
        if (midpoint(p.vertex(c.index), c.far_end) != c.n_point) o.fail("chord midpoint is not N");
    }
    o.detail << hits << " chords meet the opposite edge";
}

inline void diagonal_split(const CposPolygon& p, Outcome& o)
{
    auto s = diagonal_area_split(p, 1);
    o.detail << "A1 " << s.area_first << ", A2 " << s.area_second;
    if (s.area_first + s.area_second != p.area()) o.fail("; split does not add up");
    if (s.diff() != evolute_moment(p)) o.fail("; difference is not the evolute moment");
}

inline void ess_structure(const CposPolygon& p, Outcome& o)
{
    auto branches = ess_trace(p);
    if (is_symmetric(p)) {
        if (!branches.empty()) o.fail("symmetric polygon has ESS branches");
        for (int k = 0; k < 200; ++k) {
            Rational t = Rational(-1) + Rational(3 * k, 199);
            if (t != Rational(1, 2) && !equidistant_self_intersections(p, t).empty()) o.fail("; non-simple equidistant");
        }
        o.detail << "empty";
        return;
    }
    auto ae = cusp_points(require_classified(area_evolute(p)));
    auto css = cusp_points(require_classified(central_symmetry_set(p)));
    auto contains = [](const std::vector<Point>& v, const Point& x) { return std::find(v.begin(), v.end(), x) != v.end(); };
    int junctions = 0;
    for (const auto& br : branches) {
        if (!br.closed) {
            const Point ends[2] = {br.segments.front().seg.a, br.segments.back().seg.b};
            for (int e = 0; e < 2; ++e) {
                auto kind = br.endpoints[static_cast<std::size_t>(e)];
                if (!kind)
                    o.fail("unclassified branch end");
                else if (!contains(*kind == EssEndpoint::CssCusp ? css : ae, ends[e]))
                    o.fail("branch end is not the cusp it claims");
            }
        }
        for (const auto& j : br.junctions) {
            ++junctions;
            if (j.cusp != j.on_css) o.fail("junction cusp flag disagrees with CSS membership");
        }
    }
    int found = 0;
    for (int k = 0; k < 200; ++k) {
        Rational t = Rational(-1) + Rational(3 * k, 199);
        for (const auto& x : equidistant_self_intersections(p, t)) {
            ++found;
            if (!on_any_branch(branches, x)) o.fail("self-intersection off the traced ESS");
        }
    }
    o.detail << branches.size() << " branches, " << junctions << " junctions, " << found << " sweep points";
}

inline void rectified_cusps(const CposPolygon& p, Outcome& o)
{
    const Rational half = p.area() / Rational(2);
    const AreaCellTable table(p);
    int traced = 0, cusps = 0;
    for (int k = 1; k <= 20; ++k) {
        RectifiedParallel rp;
        try {
            rp = rectified_parallel(p, table, half * Rational(k, 21));
        } catch (const GeometryError& e) {
            if (e.kind() != ErrorKind::NonGenericTangency) throw;
            continue;
        }
        ++traced;
        auto on_ae = on_area_evolute(p, rp);
        for (std::size_t c = 0; c < rp.chains.size(); ++c)
            for (std::size_t v = 0; v < on_ae[c].size(); ++v) {
                cusps += rp.chains[c].cusps[v] ? 1 : 0;
                if (rp.chains[c].cusps[v] != on_ae[c][v]) o.fail("cusp flag disagrees with AE membership");
            }
    }
    o.detail << traced << " levels, " << cusps << " cusps";
}

inline void rass_consistency(const CposPolygon& p, Outcome& o)
{
    if (is_symmetric(p)) return o.skip("symmetric");
    if (!almost_symmetry(p)) return o.skip("no almost-symmetry certificate");
    auto r = rass(p);
    o.detail << "mu0 " << r.certificate.mu0 << ", " << r.checked_points << " points on " << r.levels.size() << " levels";
    if (!r.consistent()) o.fail("; self-intersections off the RASS");
}

} // namespace theorems_detail

/// Runs every checkable statement on one polygon. A check that meets a
/// degenerate configuration reports it as skipped rather than failing.
inline std::vector<CheckResult> run_checks(const CposPolygon& p)
{
    using namespace theorems_detail;
    const std::vector<std::pair<const char*, std::function<void(const CposPolygon&, Outcome&)>>> suite{
        {"cusp_counts", cusp_counts},
        {"equal_area_midpoints", equal_area_midpoints},
        {"jump_law", jump_law},
        {"cusp_locus_is_css", cusp_locus_is_css},
        {"pd_transform_evolute", pd_transform_evolute},
        {"half_area_chords", half_area_chords_split},
        {"diagonal_split", diagonal_split},
        {"ess_structure", ess_structure},
        {"rectified_cusps", rectified_cusps},
        {"rass_consistency", rass_consistency},
    };
    std::vector<CheckResult> out;
    for (const auto& [name, fn] : suite) {
        Outcome o;
        try {
            fn(p, o);
        } catch (const GeometryError& e) {
            o.status = CheckStatus::Skipped;
            o.detail.str("");
            o.detail << to_string(e.kind()) << ": " << e.what();
        }
        out.push_back({name, o.status, o.detail.str()});
    }
    return out;
}

inline bool all_pass(const std::vector<CheckResult>& rs)
{
    for (const auto& r : rs)
        if (r.status == CheckStatus::Fail) return false;
    return true;
}

inline Json checks_json(const std::vector<CheckResult>& rs)
{
    Json checks = Json::array();
    for (const auto& r : rs) checks.push_back(Json{{"name", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}});
    return Json{{"checks", checks}, {"pass", all_pass(rs)}};
}

} // namespace cpos
