// Acceptance run: one PASS/FAIL line per criterion. `--only 1,sym,10.cusps`
// restricts the run; the exit status is 0 only if every printed line passes.

#include "cpos/cpos.hpp"
#include "fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace cpos;
using cpos::testing::hex_ea2;
using cpos::testing::hex_sym;
using cpos::testing::pt;
using cpos::testing::R;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    int failures = 0;

    void expect(bool ok, const std::string& why)
    {
        if (ok) return;
        if (failures < 3) detail << (failures ? "; " : "") << why;
        ++failures;
        pass = false;
    }
};

// Oracles kept apart from the library routes.

Point cramer(const Point& a1, const Point& b1, const Point& a2, const Point& b2, Rational* param = nullptr)
{
    const Rational dx1 = b1.x - a1.x, dy1 = b1.y - a1.y, dx2 = b2.x - a2.x, dy2 = b2.y - a2.y;
    const Rational det = dx1 * dy2 - dy1 * dx2;
    const Rational s = ((a2.x - a1.x) * dy2 - (a2.y - a1.y) * dx2) / det;
    if (param) *param = s;
    return {a1.x + s * dx1, a1.y + s * dy1};
}

Rational shoelace(const std::vector<Point>& v)
{
    Rational twice;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Point& a = v[k];
        const Point& b = v[(k + 1) % v.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return twice / Rational(2);
}

// Midpoint of the chord from P_i to the support line of P_{i+n}P_{i+n+1} that
// cuts off half the area, found by solving the affine area equation.
std::vector<Point> n_points_oracle(const CposPolygon& p)
{
    const int n = p.n();
    const Rational half = shoelace(p.vertices()) / Rational(2);
    std::vector<Point> out;
    for (int i = 1; i <= n; ++i) {
        auto area_at = [&](const Rational& s) {
            std::vector<Point> side;
            for (int k = i; k <= i + n; ++k) side.push_back(p.vertex(k));
            side.push_back(lerp(p.vertex(i + n), p.vertex(i + n + 1), s));
            return shoelace(side);
        };
        const Rational a0 = area_at(Rational(0)), a1 = area_at(Rational(1));
        const Point x = lerp(p.vertex(i + n), p.vertex(i + n + 1), (half - a0) / (a1 - a0));
        out.push_back({(p.vertex(i).x + x.x) / Rational(2), (p.vertex(i).y + x.y) / Rational(2)});
    }
    return out;
}

std::set<Point> as_set(const std::vector<Point>& v) { return {v.begin(), v.end()}; }

std::vector<Point> cusps_of(const PolyChain& c)
{
    std::vector<Point> out;
    for (std::size_t k = 0; k < c.cusps.size(); ++k)
        if (c.cusps[k]) out.push_back(c.points[k]);
    return out;
}

bool on_branches(const std::vector<EssBranch>& branches, const Point& x)
{
    for (const auto& br : branches)
        for (const auto& s : br.segments)
            if (point_on_segment(x, s.seg)) return true;
    return false;
}

const std::vector<CposPolygon>& ensemble()
{
    static const std::vector<CposPolygon> polys = [] {
        std::vector<CposPolygon> out;
        for (int k = 0; k < 500; ++k) out.push_back(random_cpos(3 + k % 6, 20261016u + static_cast<std::uint64_t>(k)));
        return out;
    }();
    return polys;
}

// Criteria

void fixture_evolute(Verdict& v)
{
    const auto p = hex_ea2();
    const std::vector<Point> ae_expected{pt("0", "3/2"), pt("-1/2", "3/2"), pt("-1/2", "2")};
    const std::vector<Point> css_expected{pt(0, 2), pt(0, 1), pt(-1, 2)};
    const std::vector<Rational> lambda_expected{R("1/3"), R("2/3"), R("1/3"), R("2/3"), R("1/3"), R("2/3")};

    std::vector<Point> ae_oracle, css_oracle;
    std::vector<Rational> lambda_oracle;
    for (int i = 1; i <= 3; ++i)
        ae_oracle.push_back({(p.vertex(i).x + p.vertex(i + 3).x) / Rational(2), (p.vertex(i).y + p.vertex(i + 3).y) / Rational(2)});
    for (int i = 1; i <= 6; ++i) {
        Rational s;
        css_oracle.push_back(cramer(p.vertex(i), p.vertex(i + 3), p.vertex(i + 1), p.vertex(i + 4), &s));
        lambda_oracle.push_back(s);
    }
    v.expect(ae_oracle == ae_expected, "AE oracle disagrees with the fixture");
    v.expect(as_set(css_oracle) == as_set(css_expected), "CSS oracle disagrees with the fixture");
    v.expect(lambda_oracle == lambda_expected, "lambda oracle disagrees with the fixture");

    const auto ae = area_evolute(p), css = central_symmetry_set(p);
    v.expect(ae.points == ae_expected, "AE");
    v.expect(as_set(css.points) == as_set(css_expected) && css.points.size() == 3, "CSS");
    v.expect(lambda_sequence(p) == lambda_expected, "lambda sequence");
    v.expect(!ae.withheld && ae.cusp_count() == 3, "AE cusps");
    v.expect(!css.withheld && css.cusp_count() == 3, "CSS cusps");
    v.detail << "AE, CSS, lambda and 3+3 cusps exact";
}

void fixture_equal_area(Verdict& v)
{
    const auto p = hex_ea2();
    v.expect(is_equal_area(p), "not equal-area");
    auto cls = classify_equal_area(p);
    v.expect(cls && cls->n == 3 && cls->n % 2 == 1 && cls->alpha == Rational(2) && !cls->symmetric, "classification");
    auto r = nonsymmetric_equal_area_midpoint_check(p);
    v.expect(r.midpoints_hold, "2 M_i = D(i-1/2) + D(i+1/2) fails");
    v.expect(r.lambda_tilde == R("1/6") && r.offsets_match, "lambda~");
    // The midpoint property again from the Cramer oracle.
    for (int i = 1; i <= 3; ++i) {
        Point d_prev = cramer(p.vertex(i - 1), p.vertex(i + 2), p.vertex(i), p.vertex(i + 3));
        Point d_next = cramer(p.vertex(i), p.vertex(i + 3), p.vertex(i + 1), p.vertex(i + 4));
        v.expect(d_prev.x + d_next.x == p.vertex(i).x + p.vertex(i + 3).x && d_prev.y + d_next.y == p.vertex(i).y + p.vertex(i + 3).y,
                 "oracle midpoint property at " + std::to_string(i));
    }
    if (cls) v.detail << "n 3, alpha " << cls->alpha << ", lambda~ " << r.lambda_tilde;
}

void fixture_n_points(Verdict& v)
{
    const auto p = hex_ea2();
    const std::vector<Point> expected{pt("-1/4", "3/2"), pt("-1/2", "7/4"), pt("-1/4", "7/4")};
    v.expect(n_points_oracle(p) == expected, "area-equation oracle disagrees with the fixture");
    v.expect(half_area_midpoints(p) == expected, "N points");
    for (int mu : {2, 3, 10}) {
        auto r = verify_ae_of_q(p, Rational(mu));
        v.expect(r.closure_exact && r.ae_q == expected, "AE(Q) at mu " + std::to_string(mu));
    }
    v.detail << "N exact; AE(Q) = N at mu 2, 3, 10";
}

void fixture_corollary(Verdict& v)
{
    const auto p = hex_ea2();
    const auto n = n_points_oracle(p);
    int hits = 0;
    for (const auto& c : half_area_chords(p)) {
        if (!c.on_opposite_edge) continue;
        ++hits;
        v.expect(c.n_point == n[static_cast<std::size_t>(wrap(c.index, 3) - 1)], "chord midpoint is not N");
        v.expect(c.area_first == R("13/4") && c.area_second == R("13/4"), "split at " + std::to_string(c.index));
        std::vector<Point> side;
        for (int k = c.index; k <= c.index + 3; ++k) side.push_back(p.vertex(k));
        side.push_back(c.far_end);
        v.expect(shoelace(side) == R("13/4"), "oracle split at " + std::to_string(c.index));
    }
    v.expect(hits > 0, "the hypothesis holds at no index");
    v.detail << hits << " indices, each 13/4 + 13/4";
}

void fixture_symmetric(Verdict& v)
{
    const auto p = hex_sym();
    const std::vector<Point> origin{pt(0, 0)};
    v.expect(area_evolute(p).points == origin, "AE");
    v.expect(central_symmetry_set(p).points == origin, "CSS");
    v.expect(count_midpoint_chords(p, pt(0, 0)) == 3, "N(centre)");
    int levels = 0;
    for (int k = -128; k <= 256; ++k) {
        Rational t(k, 128);
        if (t == Rational(1, 2)) continue;
        ++levels;
        v.expect(equidistant_self_intersections(p, t).empty(), "equidistant at t = " + t.str() + " is not simple");
    }
    v.expect(ess_trace(p).empty(), "ESS not empty");
    v.detail << "centre collapse, N 3, " << levels << " simple equidistants, empty ESS";
}

void ensemble_cusps(Verdict& v)
{
    int withheld = 0, symmetric = 0;
    for (const auto& p : ensemble()) {
        bool ok = true;
        try {
            validate(p.vertices());
        } catch (const GeometryError&) {
            ok = false;
        }
        v.expect(ok, "validate fails");
        if (is_symmetric(p)) {
            ++symmetric;
            continue;
        }
        auto ae = area_evolute(p), css = central_symmetry_set(p);
        if (ae.withheld || css.withheld) {
            ++withheld;
            continue;
        }
        const int a = ae.cusp_count(), c = css.cusp_count();
        v.expect(a % 2 == 1 && c % 2 == 1, "even cusp count");
        v.expect(a >= 3, "fewer than 3 AE cusps");
        v.expect(c >= a, "CSS has fewer cusps than AE");
    }
    v.detail << ensemble().size() << " polygons, " << symmetric << " symmetric, " << withheld << " withheld";
}

void ensemble_jump_law(Verdict& v)
{
    std::size_t straddles = 0;
    for (const auto& p : ensemble()) {
        if (is_symmetric(p)) continue;
        auto r = verify_jump_law(p);
        straddles += r.samples.size();
        v.expect(!r.samples.empty(), "no straddles sampled");
        for (const auto& s : r.samples) v.expect(s.pass, "N does not change by 2");
    }
    v.detail << straddles << " straddles";
}

void ensemble_cusp_locus(Verdict& v)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-300, 400), den(1, 97);
    std::size_t probes = 0;
    for (const auto& p : ensemble()) {
        auto css = central_symmetry_set(p);
        if (css.withheld) continue;
        using Key = std::pair<Point, Point>;
        auto key = [](const Segment& s) { return s.b < s.a ? Key{s.b, s.a} : Key{s.a, s.b}; };
        std::set<Key> expected, got;
        for (const auto& e : css.edges()) expected.insert(key(e));
        for (const auto& s : cusp_locus(p))
            if (!s.empty()) got.insert(key(s.swept));
        v.expect(got == expected, "cusp locus differs from the CSS");
        for (int i = 1; i <= p.size(); ++i) {
            Rational s0, s1;
            cramer(p.vertex(i - 1), p.vertex(i - 1 + p.n()), p.vertex(i), p.vertex(i + p.n()), &s0);
            cramer(p.vertex(i), p.vertex(i + p.n()), p.vertex(i + 1), p.vertex(i + 1 + p.n()), &s1);
            v.expect(s0 == css_lambda(p, i - 1) && s1 == css_lambda(p, i), "lambda oracle");
            const Rational lo = min(s0, s1), hi = max(s0, s1);
            std::vector<Rational> ts{lo, hi, (lo + hi) / Rational(2)};
            for (int k = 0; k < 4; ++k) ts.push_back(Rational(num(rng), den(rng)) / Rational(100));
            for (const auto& t : ts) {
                ++probes;
                v.expect((cusp_function(p, i, t).sign() < 0) == (lo < t && t < hi), "f_i sign window");
            }
        }
    }
    v.detail << probes << " window probes";
}

void ensemble_pd(Verdict& v)
{
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> num(-60, 60), den(1, 12);
    int runs = 0;
    for (const auto& p : ensemble()) {
        const auto n = n_points_oracle(p);
        for (int k = 0; k < 10; ++k) {
            const Rational mu(num(rng), den(rng));
            auto r = verify_ae_of_q(p, mu);
            ++runs;
            v.expect(r.closure_exact, "closure residue nonzero at mu " + mu.str());
            v.expect(r.ae_q == n, "AE(Q) differs from N at mu " + mu.str());
        }
    }
    v.detail << runs << " transforms";
}

void ensemble_ess(Verdict& v)
{
    std::size_t ends = 0, junctions = 0, sweep = 0;
    for (const auto& p : ensemble()) {
        auto ae = area_evolute(p), css = central_symmetry_set(p);
        if (ae.withheld || css.withheld) continue;
        const auto ae_cusps = cusps_of(ae), css_cusps = cusps_of(css);
        auto contains = [](const std::vector<Point>& s, const Point& x) { return std::find(s.begin(), s.end(), x) != s.end(); };
        auto on_css = [&](const Point& x) {
            for (const auto& e : css.edges())
                if (point_on_segment(x, e)) return true;
            return false;
        };
        const auto branches = ess_trace(p);
        for (const auto& br : branches) {
            if (!br.closed) {
                const Point at[2] = {br.segments.front().seg.a, br.segments.back().seg.b};
                for (int e = 0; e < 2; ++e) {
                    ++ends;
                    auto kind = br.endpoints[static_cast<std::size_t>(e)];
                    v.expect(kind && (*kind == EssEndpoint::CssCusp || *kind == EssEndpoint::AeCusp), "endpoint kind");
                    if (kind) v.expect(contains(*kind == EssEndpoint::CssCusp ? css_cusps : ae_cusps, at[e]), "endpoint is not that cusp");
                }
            }
            for (const auto& j : br.junctions) {
                ++junctions;
                v.expect(j.cusp == j.on_css, "junction cusp flag vs CSS flag");
                v.expect(j.cusp == on_css(j.point), "junction cusp flag vs CSS membership");
            }
        }
        for (int k = 0; k < 200; ++k) {
            const Rational t = Rational(-1) + Rational(3 * k, 199);
            for (const auto& x : equidistant_self_intersections(p, t)) {
                ++sweep;
                v.expect(on_branches(branches, x), "sweep point off the traced ESS");
            }
        }
    }
    v.detail << ends << " endpoints, " << junctions << " junctions, " << sweep << " sweep points";
}

struct LevelEdge {
    int level;
    bool simple; // the level has no self-intersections
    Segment s;
    detail::Box box;
};

void ensemble_rectified(Verdict* cusps_v, Verdict* disjoint_v)
{
    std::size_t traced = 0, flags = 0, crossings = 0, simple_crossings = 0;
    int crossing_polygons = 0;
    for (const auto& p : ensemble()) {
        const Rational half = p.area() / Rational(2);
        const AreaCellTable table(p);
        std::vector<LevelEdge> edges;
        for (int k = 1; k <= 20; ++k) {
            RectifiedParallel rp;
            try {
                rp = rectified_parallel(p, table, half * Rational(k, 21));
            } catch (const GeometryError& e) {
                if (e.kind() != ErrorKind::NonGenericTangency) throw;
                rp = rectified_parallel(p, table, half * (Rational(k, 21) + Rational(1, 21000)));
            }
            ++traced;
            if (cusps_v) {
                auto on_ae = on_area_evolute(p, rp);
                for (std::size_t c = 0; c < rp.chains.size(); ++c)
                    for (std::size_t x = 0; x < on_ae[c].size(); ++x) {
                        ++flags;
                        cusps_v->expect(rp.chains[c].cusps[x] == on_ae[c][x], "cusp flag vs AE membership");
                    }
            }
            if (disjoint_v) {
                bool simple = false;
                try {
                    simple = rp.self_intersections().empty();
                } catch (const GeometryError&) {
                }
                for (const auto& chain : rp.chains)
                    for (const auto& s : chain.edges()) edges.push_back({k, simple, s, detail::Box(s)});
            }
        }
        if (!disjoint_v) continue;
        std::sort(edges.begin(), edges.end(), [](const LevelEdge& a, const LevelEdge& b) { return a.box.x0 < b.box.x0; });
        std::size_t here = 0, between_simple = 0;
        for (std::size_t a = 0; a < edges.size(); ++a)
            for (std::size_t b = a + 1; b < edges.size() && edges[b].box.x0 <= edges[a].box.x1; ++b) {
                if (edges[a].level == edges[b].level || !edges[a].box.meets(edges[b].box)) continue;
                if (segments_overlap(edges[a].s, edges[b].s) || segment_intersection(edges[a].s, edges[b].s)) {
                    ++here;
                    if (edges[a].simple && edges[b].simple) ++between_simple;
                }
            }
        crossings += here;
        simple_crossings += between_simple;
        if (here) ++crossing_polygons;
        if (here && disjoint_v->pass) disjoint_v->expect(false, "chains at distinct levels meet");
    }
    if (cusps_v) cusps_v->detail << traced << " levels, " << flags << " vertices";
    if (disjoint_v)
        disjoint_v->detail << (disjoint_v->pass ? "" : " | ") << crossing_polygons << " of " << ensemble().size()
                           << " polygons have crossing levels, " << crossings << " edge pairs, "
                           << simple_crossings << " of them between two simple levels";
}

void ensemble_rass(Verdict& v)
{
    int certified = 0;
    std::size_t points = 0;
    for (const auto& p : ensemble()) {
        auto cert = almost_symmetry(p);
        if (!cert) continue;
        ++certified;
        // The certificate itself, re-derived by point location.
        for (const auto& x : area_evolute(p).points)
            v.expect(locate_in_convex(x, cert->q.vertices()) == Containment::Inside, "AE not inside Q");
        for (const auto& x : one_diagonal_midpoints(p))
            v.expect(locate_in_convex(x, cert->q.vertices()) == Containment::Outside, "one-diagonal midpoint inside Q");
        auto r = rass(p);
        const auto ess_q = ess_trace(cert->q);
        bool same = r.branches.size() == ess_q.size();
        for (std::size_t b = 0; same && b < ess_q.size(); ++b) {
            same = r.branches[b].segments.size() == ess_q[b].segments.size();
            for (std::size_t s = 0; same && s < ess_q[b].segments.size(); ++s)
                same = r.branches[b].segments[s].seg.a == ess_q[b].segments[s].seg.a
                    && r.branches[b].segments[s].seg.b == ess_q[b].segments[s].seg.b;
        }
        v.expect(same, "RASS branches differ from ESS(Q)");
        points += r.checked_points;
        v.expect(r.consistent(), "rectified self-intersection off the RASS");
    }
    v.expect(certified > 0, "no polygon has a certificate");
    v.detail << certified << " certified polygons, " << points << " self-intersections checked";
}

struct Criterion {
    std::string id;
    std::string title;
    std::function<void(Verdict&)> run;
};

} // namespace

int main(int argc, char** argv)
{
    std::set<std::string> only;
    for (int a = 1; a < argc; ++a) {
        std::string arg = argv[a];
        if (arg == "--only" && a + 1 < argc) {
            std::stringstream ss(argv[++a]);
            for (std::string id; std::getline(ss, id, ',');) only.insert(id);
        } else {
            std::fprintf(stderr, "usage: acceptance [--only id,id,...]\n");
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {"1", "HEX_EA2 evolute, CSS, lambda sequence, cusps", fixture_evolute},
        {"2", "HEX_EA2 equal-area classification and midpoint property", fixture_equal_area},
        {"3", "HEX_EA2 N points and AE of the transform", fixture_n_points},
        {"4", "HEX_EA2 half-area chords", fixture_corollary},
        {"sym", "HEX_SYM collapse, N, simple equidistants, empty ESS", fixture_symmetric},
        {"5", "ensemble validation and cusp counts", ensemble_cusps},
        {"6", "ensemble jump law", ensemble_jump_law},
        {"7", "ensemble cusp locus and cusp windows", ensemble_cusp_locus},
        {"8", "ensemble transform closure and AE(Q) = N", ensemble_pd},
        {"9", "ensemble ESS endpoints, junctions and sweep", ensemble_ess},
        {"10.cusps", "ensemble rectified parallels: cusp iff on AE", [](Verdict& v) { ensemble_rectified(&v, nullptr); }},
        {"10.disjoint", "ensemble rectified parallels: distinct levels disjoint", [](Verdict& v) { ensemble_rectified(nullptr, &v); }},
        {"11", "ensemble RASS against ESS(Q)", ensemble_rass},
    };

    bool all = true;
    for (const auto& c : criteria) {
        const std::string group = c.id.substr(0, c.id.find('.'));
        if (!only.empty() && !only.count(c.id) && !only.count(group)) continue;
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(v);
        } catch (const std::exception& e) {
            v.expect(false, std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && v.pass;
        std::printf("%s  %-12s %s (%.1f s): %s", v.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(), secs,
                    v.detail.str().c_str());
        if (v.failures > 3) std::printf(" [%d failures]", v.failures);
        std::printf("\n");
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
