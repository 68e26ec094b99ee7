#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <optional>

#include "hilbert/errors.hpp"
#include "hilbert/extremal_geometry.hpp"
#include "hilbert/hilbert_core.hpp"
#include "hilbert/sampling.hpp"
#include "hilbert/simplex_analytic.hpp"

namespace hilbert::cli {

using nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kMinArea = kPi * kPi * kPi / 24.0;
// Quadrature slack allowed when comparing converged areas with a bound.
constexpr double kAreaTol = 1e-4;
const std::vector<double> kTruncations{0.9, 0.99, 0.999};

long count_or(long samples, long fallback) { return samples > 0 ? samples : fallback; }

const ConvexBody& need_body(const VerifyContext& ctx) {
    if (!ctx.body) fail(ErrorCode::InvalidArgument, "this statement needs --body");
    return *ctx.body;
}

const ConvexBody& need_smooth(const VerifyContext& ctx) {
    const ConvexBody& body = need_body(ctx);
    if (body.is_polygon()) fail(ErrorCode::UnsupportedRepresentation, "needs a smooth strictly convex body");
    return body;
}

const Polygon& need_polygon(const VerifyContext& ctx) {
    const ConvexBody& body = need_body(ctx);
    if (!body.is_polygon()) fail(ErrorCode::UnsupportedRepresentation, "needs a polygon");
    return *body.as_polygon();
}

ordered_json point_json(const Point& p) { return ordered_json::array({number12(p.x), number12(p.y)}); }

ordered_json triangle_json(const IdealTriangle& t) {
    ordered_json j = ordered_json::array();
    for (const Point& v : t.vertices) j.push_back(point_json(v));
    return j;
}

ordered_json area_json(const AreaResult& r) {
    return {{"value", number12(r.value)}, {"error", number12(r.error)}, {"verdict", verdict_name(r.verdict)}};
}

bool is_square_s(const Polygon& poly) {
    if (poly.size() != 4) return false;
    for (const Point& v : poly.vertices())
        if (std::fabs(std::fabs(v.x) - 1.0) > 1e-12 || std::fabs(std::fabs(v.y) - 1.0) > 1e-12) return false;
    return true;
}

bool increasing(const std::vector<AreaResult>& areas) {
    for (std::size_t i = 1; i < areas.size(); ++i)
        if (!(areas[i].value > areas[i - 1].value)) return false;
    return true;
}

double min_increment(const std::vector<AreaResult>& areas) {
    double m = kInf;
    for (std::size_t i = 1; i < areas.size(); ++i) m = std::min(m, areas[i].value - areas[i - 1].value);
    return m;
}

// ------------------------------------------------------------------ thm2

VerifyReport all_triangles_pi(const ConvexBody& body, const VerifyContext& ctx, VerifyReport r) {
    Rng rng(ctx.seed);
    r.samples = count_or(ctx.samples, 20);
    r.worst_slack = kInf;
    ordered_json areas = ordered_json::array();
    for (long i = 0; i < r.samples; ++i) {
        const AreaResult a = ideal_triangle_area(body, random_ideal_triangle(body, rng), ctx.opts);
        const double slack = a.verdict == Verdict::Converged ? 1e-3 * kPi - std::fabs(a.value - kPi) : -kInf;
        r.worst_slack = std::min(r.worst_slack, slack);
        areas.push_back(number12(a.value));
    }
    r.pass = r.worst_slack >= 0.0;
    r.details = {{"case", "ellipse"}, {"areas", areas}};
    return r;
}

VerifyReport verify_thm2(const VerifyContext& ctx) {
    const ConvexBody& body = need_body(ctx);
    VerifyReport r;
    r.statement =
        "all ideal triangles have Hilbert area pi iff the domain is an ellipse; otherwise one ideal "
        "triangle has area < pi and another has area > pi or infinite";
    if (body.as_ellipse()) return all_triangles_pi(body, ctx, r);
    std::optional<Theorem2Witnesses> found;
    try {
        found = theorem2_witnesses(body, ctx.opts);
    } catch (const HilbertError& e) {
        if (e.code() != ErrorCode::BodyIsEllipse) throw;
        return all_triangles_pi(body, ctx, r);
    }
    const Theorem2Witnesses& w = *found;
    r.samples = 2;
    const double inner_slack = kPi - 1e-3 - w.inner_area.value;
    const bool outer_diverges = w.outer_area.verdict == Verdict::Divergent;
    const double outer_slack = outer_diverges ? kInf : w.outer_area.value - kPi;
    r.worst_slack = std::min(inner_slack, outer_slack);
    r.pass = w.inner_area.verdict == Verdict::Converged && inner_slack > 0.0 &&
             (outer_diverges || (w.outer_area.verdict == Verdict::Converged && outer_slack > 0.0));
    r.details = {{"case", "non-ellipse"},
                 {"inner_triangle", triangle_json(w.inner)},
                 {"inner_area", area_json(w.inner_area)},
                 {"outer_triangle", triangle_json(w.outer)},
                 {"outer_area", area_json(w.outer_area)}};
    return r;
}

// ------------------------------------------------------------------ thm3

VerifyReport verify_thm3(const VerifyContext& ctx) {
    const ConvexBody& body = need_body(ctx);
    VerifyReport r;
    r.statement = "every ideal triangle has Hilbert area at least pi^3/24";
    r.samples = count_or(ctx.samples, 50);
    Rng rng(ctx.seed);
    long converged = 0, divergent = 0, inconclusive = 0;
    double min_area = kInf;
    r.worst_slack = kInf;
    for (long i = 0; i < r.samples; ++i) {
        const AreaResult a = ideal_triangle_area(body, random_ideal_triangle(body, rng), ctx.opts);
        if (a.verdict == Verdict::Converged) {
            ++converged;
            min_area = std::min(min_area, a.value);
            r.worst_slack = std::min(r.worst_slack, a.value - kMinArea);
        } else if (a.verdict == Verdict::Divergent) {
            ++divergent;
        } else {
            ++inconclusive;
        }
    }
    r.pass = inconclusive == 0 && !(r.worst_slack < -kAreaTol);
    r.details = {{"bound", number12(kMinArea)},
                 {"converged", converged},
                 {"divergent", divergent},
                 {"inconclusive", inconclusive},
                 {"min_area", number12(min_area)}};
    return r;
}

// ------------------------------------------------------------------ thm4

VerifyReport verify_thm4(const VerifyContext& ctx) {
    const ConvexBody& body = need_smooth(ctx);
    VerifyReport r;
    r.statement =
        "on a C2 domain of positive curvature every ideal triangle has area at most "
        "2 pi (floor(2R/r) + 1) + mu(K_delta) with delta = r^3/(4R^2)";
    const BoundCertificate c = theorem4_bound(body, ctx.opts);
    const bool fields_ok = c.delta == c.r * c.r * c.r / (4.0 * c.R * c.R) &&
                           c.n_cap == static_cast<long>(std::floor(2.0 * c.R / c.r)) &&
                           c.bound == 2.0 * kPi * static_cast<double>(c.n_cap + 1) + c.core.value &&
                           c.core.verdict == Verdict::Converged;
    r.samples = count_or(ctx.samples, 50);
    Rng rng(ctx.seed);
    r.worst_slack = kInf;
    double max_area = 0.0;
    for (long i = 0; i < r.samples; ++i) {
        const AreaResult a = ideal_triangle_area(body, random_ideal_triangle(body, rng), ctx.opts);
        const double slack = a.verdict == Verdict::Converged ? c.bound - a.value : -kInf;
        r.worst_slack = std::min(r.worst_slack, slack);
        max_area = std::max(max_area, a.value);
    }
    r.pass = fields_ok && r.worst_slack >= 0.0;
    r.details = {{"r", number12(c.r)},          {"R", number12(c.R)},
                 {"delta", number12(c.delta)},  {"n_cap", c.n_cap},
                 {"core", area_json(c.core)},   {"bound", number12(c.bound)},
                 {"max_area", number12(max_area)}, {"certificate_consistent", fields_ok}};
    return r;
}

// ------------------------------------------------------------------ prop5

VerifyReport verify_prop5(const VerifyContext& ctx) {
    const ConvexBody& outer = need_body(ctx);
    VerifyReport r;
    r.statement =
        "for domains A inside B: F_B(p,v) <= F_A(p,v), vol B_A(p) <= vol B_B(p) and "
        "mu_B(R) <= mu_A(R)";
    const Point c = outer.interior_point();
    const AffineMap shrink =
        AffineMap::translation(c.as_vector()).compose(AffineMap::scaling(0.7, 0.7)).compose(
            AffineMap::translation(-c.as_vector()));
    const ConvexBody inner = apply_affine(outer, shrink);
    r.samples = count_or(ctx.samples, 1000);
    Rng rng(ctx.seed);
    double f_slack = kInf, ball_slack = kInf, region_slack = kInf;
    long regions = 0;
    for (long i = 0; i < r.samples; ++i) {
        const Point p = random_interior_point(inner, rng, 1e-3);
        const Vector v = direction(rng.uniform(0.0, 2.0 * kPi));
        f_slack = std::min(f_slack, finsler_norm(inner, p, v) - finsler_norm(outer, p, v));
        ball_slack = std::min(ball_slack, unit_ball(outer, p).area() - unit_ball(inner, p).area());
        if (i % 100 == 0) {
            const std::vector<Point> tri{random_interior_point(inner, rng, 1e-2),
                                         random_interior_point(inner, rng, 1e-2),
                                         random_interior_point(inner, rng, 1e-2)};
            if (std::fabs(orient2d(tri[0], tri[1], tri[2])) < 1e-6) continue;
            const AreaResult a = region_area(inner, tri, ctx.opts);
            const AreaResult b = region_area(outer, tri, ctx.opts);
            region_slack = std::min(region_slack, a.value - b.value);
            ++regions;
        }
    }
    r.worst_slack = std::min({f_slack, ball_slack, region_slack});
    r.pass = r.worst_slack >= -1e-10;
    r.details = {{"inner_scale", 0.7},
                 {"finsler_slack", number12(f_slack)},
                 {"ball_slack", number12(ball_slack)},
                 {"region_slack", number12(region_slack)},
                 {"regions", regions}};
    return r;
}

// ------------------------------------------------------------------ prop6

std::string shape_name(std::size_t corners) {
    switch (corners) {
        case 4: return "square";
        case 6: return "hexagon";
        case 8: return "octagon";
        default: return std::to_string(corners) + "-gon";
    }
}

VerifyReport verify_prop6(const VerifyContext& ctx) {
    VerifyReport r;
    r.statement =
        "in the square (-1,1)^2: 2(1-x^2)(1-y^2) <= vol B(p) <= 4(1-x^2)(1-y^2); the unit ball is a "
        "square at 0, a hexagon on the diagonals and an octagon elsewhere";
    const ConvexBody sq = make_square();
    r.samples = count_or(ctx.samples, 10000);
    Rng rng(ctx.seed);
    r.worst_slack = kInf;
    for (long i = 0; i < r.samples; ++i) {
        const Point p{rng.uniform(-0.999, 0.999), rng.uniform(-0.999, 0.999)};
        const double area = ball_area(sq, p).value;
        const double g = (1.0 - p.x * p.x) * (1.0 - p.y * p.y);
        r.worst_slack = std::min({r.worst_slack, area - 2.0 * g, 4.0 * g - area});
    }
    // Structured shape samples: the center, diagonal points, generic points.
    long mismatches = 0;
    std::map<std::string, long> seen;
    for (int k = 0; k < 100; ++k) {
        Point p{};
        std::size_t expected = 4;
        if (k >= 1 && k < 34) {
            const double a = 0.9 * k / 34.0;
            p = {(k % 2 ? a : -a), (k % 4 < 2 ? a : -a)};
            expected = 6;
        } else if (k >= 34) {
            p = {rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)};
            if (std::fabs(std::fabs(p.x) - std::fabs(p.y)) < 1e-3) p.y = 0.5 * p.y;
            expected = 8;
        }
        const std::size_t corners = unit_ball(sq, p).corner_count();
        ++seen[shape_name(corners)];
        if (corners != expected) ++mismatches;
    }
    r.pass = r.worst_slack >= -1e-12 && mismatches == 0;
    r.details = {{"shape_samples", 100}, {"shape_mismatches", mismatches}, {"shapes", seen}};
    return r;
}

// ------------------------------------------------------------------ prop10

VerifyReport verify_prop10(const VerifyContext& ctx) {
    const ConvexBody& body = need_smooth(ctx);
    VerifyReport r;
    r.statement = "on a C2 domain of positive curvature every ideal triangle has finite area";
    r.samples = count_or(ctx.samples, 20);
    Rng rng(ctx.seed);
    r.worst_slack = kInf;
    long converged = 0;
    double max_area = 0.0;
    for (long i = 0; i < r.samples; ++i) {
        const AreaResult a = ideal_triangle_area(body, random_ideal_triangle(body, rng), ctx.opts);
        if (a.verdict == Verdict::Converged) {
            ++converged;
            max_area = std::max(max_area, a.value);
        }
        // Margin below the divergence cap; -inf when not converged.
        r.worst_slack = std::min(r.worst_slack, a.verdict == Verdict::Converged ? ctx.opts.divergence_cap - a.value : -kInf);
    }
    r.pass = converged == r.samples;
    r.details = {{"converged", converged}, {"max_area", number12(max_area)}};
    return r;
}

// ------------------------------------------------------------- cor61/62

VerifyReport verify_cor61(const VerifyContext& ctx) {
    const Polygon& poly = need_polygon(ctx);
    const ConvexBody& body = *ctx.body;
    VerifyReport r;
    r.statement =
        "for [a,b] inside a flat boundary segment, mu(A(s,t)) increases to infinity as t -> 1, with "
        "A(s,t) the part of the triangle pab between the levels s and t";
    const bool square = is_square_s(poly);
    const Point p = body.interior_point();
    r.samples = static_cast<long>(poly.size());
    r.worst_slack = kInf;
    bool all_ok = true;
    ordered_json edges = ordered_json::array();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = lerp(poly.vertex(i), poly.vertex(i + 1), 0.25);
        const Point b = lerp(poly.vertex(i), poly.vertex(i + 1), 0.75);
        const ProbeResult pr = flat_divergence_probe(body, p, a, b, 0.5, kTruncations, ctx.opts);
        bool ok = pr.verdict == Verdict::Divergent && increasing(pr.areas);
        double slack = min_increment(pr.areas);
        ordered_json areas = ordered_json::array();
        for (std::size_t k = 0; k < pr.areas.size(); ++k) {
            areas.push_back(number12(pr.areas[k].value));
            if (square) {
                // The rectangle [0, s x0] x [s, t] doubled, with s = 1/2 and x0 = 1/2.
                const double bound =
                    0.5 * kPi * std::atanh(0.25) * (std::atanh(kTruncations[k]) - std::atanh(0.5));
                slack = std::min(slack, pr.areas[k].value - bound);
                ok = ok && pr.areas[k].value > bound;
            }
        }
        all_ok = all_ok && ok;
        r.worst_slack = std::min(r.worst_slack, slack);
        edges.push_back({{"edge", i}, {"areas", areas}, {"verdict", verdict_name(pr.verdict)}});
    }
    r.pass = all_ok;
    r.details = {{"truncations", kTruncations}, {"argth_bound_checked", square}, {"edges", edges}};
    return r;
}

VerifyReport verify_cor62(const VerifyContext& ctx) {
    const Polygon& poly = need_polygon(ctx);
    const ConvexBody& body = *ctx.body;
    VerifyReport r;
    r.statement = "a triangle p omega q with omega a corner of the boundary has infinite area";
    r.samples = static_cast<long>(poly.size());
    r.worst_slack = kInf;
    bool all_ok = true;
    ordered_json corners = ordered_json::array();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& omega = poly.vertex(i);
        const Point c = body.interior_point();
        const Point p = lerp(midpoint(poly.vertex(i + poly.size() - 1), omega), c, 0.25);
        const Point q = lerp(midpoint(omega, poly.vertex(i + 1)), c, 0.25);
        const ProbeResult pr = corner_divergence_probe(body, omega, p, q, kTruncations, ctx.opts);
        const bool ok = pr.verdict == Verdict::Divergent && increasing(pr.areas);
        all_ok = all_ok && ok;
        r.worst_slack = std::min(r.worst_slack, min_increment(pr.areas));
        ordered_json areas = ordered_json::array();
        for (const AreaResult& a : pr.areas) areas.push_back(number12(a.value));
        corners.push_back({{"corner", i}, {"areas", areas}, {"verdict", verdict_name(pr.verdict)}});
    }
    r.pass = all_ok;
    r.details = {{"truncations", kTruncations}, {"corners", corners}};
    return r;
}

// --------------------------------------------------------------- lemmas

VerifyReport verify_lemma12(const VerifyContext& ctx) {
    const ConvexBody& body = need_smooth(ctx);
    VerifyReport r;
    r.statement =
        "the point a' where ]a,b[ meets the inner circle of radius r tangent at a satisfies "
        "d(a', boundary) >= r d(a,b)^2 / (4R^2)";
    r.samples = count_or(ctx.samples, 10000);
    Rng rng(ctx.seed);
    r.worst_slack = kInf;
    long violations = 0;
    for (long i = 0; i < r.samples; ++i) {
        const Point a = random_boundary_point(body, rng);
        Point b = random_boundary_point(body, rng);
        while (distance(a, b) < 1e-9 * body.diameter()) b = random_boundary_point(body, rng);
        const Lemma12Result l = lemma12_check(body, a, b);
        r.worst_slack = std::min(r.worst_slack, l.slack);
        if (!l.holds) ++violations;
    }
    r.pass = violations == 0 && r.worst_slack >= -1e-12;
    r.details = {{"violations", violations}};
    return r;
}

VerifyReport verify_lemma13(const VerifyContext& ctx) {
    const ConvexBody& body = need_smooth(ctx);
    VerifyReport r;
    r.statement = "a rectangle of base ]a,b[ with d(a,b) <= r and height r has measure at most 2 pi floor(2R/r)";
    r.samples = count_or(ctx.samples, 100);
    const RollingRadii rr = rolling_radii(body);
    Rng rng(ctx.seed);
    r.worst_slack = kInf;
    long violations = 0;
    double max_area = 0.0;
    for (long i = 0; i < r.samples; ++i) {
        const double t = rng.uniform();
        const Point a = boundary_point_at_parameter(body, t);
        double dt = 0.25 * rng.uniform(0.05, 1.0);
        Point b = boundary_point_at_parameter(body, t + dt);
        while (distance(a, b) > rr.r) {
            dt *= 0.5;
            b = boundary_point_at_parameter(body, t + dt);
        }
        const Lemma13Result l = lemma13_rectangle(body, a, b, ctx.opts);
        const double slack = l.area.verdict == Verdict::Converged ? l.cap - l.area.value : -kInf;
        r.worst_slack = std::min(r.worst_slack, slack);
        max_area = std::max(max_area, l.area.value);
        if (!l.holds) ++violations;
    }
    r.pass = violations == 0 && r.worst_slack >= -1e-12;
    r.details = {{"r", number12(rr.r)},
                 {"R", number12(rr.R)},
                 {"cap", number12(2.0 * kPi * std::floor(2.0 * rr.R / rr.r))},
                 {"max_area", number12(max_area)},
                 {"violations", violations}};
    return r;
}

VerifyReport verify_lemma_b1(const VerifyContext& ctx) {
    VerifyReport r;
    r.statement =
        "for circles of radii rho < rho' tangent to the x-axis at 0, chords through m on [0,c] satisfy "
        "d(p,q) >= (rho/rho') d(p',q'), and for m = 0, d(q, circle') >= (rho'-rho)/(2 rho rho') |q|^2";
    const long n = count_or(ctx.samples, 10000);
    r.samples = 2 * n;
    Rng rng(ctx.seed);
    double chord_slack = kInf, tangent_slack = kInf;
    long violations = 0;
    for (long i = 0; i < 2 * n; ++i) {
        const double rho = rng.uniform(0.05, 2.0);
        const double rho2 = rho * rng.uniform(1.0 + 1e-6, 5.0);
        const double my = i < n ? rho * rng.uniform() : 0.0;
        const Vector v = direction(rng.uniform(0.0, 2.0 * kPi));
        const LemmaB1Result l = lemma_b1_check(rho, rho2, my, v);
        chord_slack = std::min(chord_slack, l.slack);
        if (l.tangent_case) tangent_slack = std::min(tangent_slack, l.tangent_slack);
        if (!l.holds) ++violations;
    }
    r.worst_slack = std::min(chord_slack, tangent_slack);
    r.pass = violations == 0 && r.worst_slack >= -1e-12;
    r.details = {{"chord_slack", number12(chord_slack)},
                 {"tangent_slack", number12(tangent_slack)},
                 {"violations", violations}};
    return r;
}

VerifyReport verify_lemma_b2(const VerifyContext& ctx) {
    VerifyReport r;
    r.statement = "if the chord at height h has length 2 alpha <= r then d(c, q') <= 3r/4";
    r.samples = count_or(ctx.samples, 10000);
    Rng rng(ctx.seed);
    r.worst_slack = kInf;
    long violations = 0;
    const double h_max = 1.0 - std::sqrt(3.0) / 2.0;
    for (long i = 0; i < r.samples; ++i) {
        const double rad = rng.uniform(0.01, 10.0);
        const LemmaB2Result l = lemma_b2_check(rad, rad * h_max * rng.uniform());
        r.worst_slack = std::min(r.worst_slack, l.slack);
        if (!l.holds) ++violations;
    }
    r.pass = violations == 0 && r.worst_slack >= -1e-12;
    r.details = {{"violations", violations}};
    return r;
}

using Runner = std::function<VerifyReport(const VerifyContext&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
    static const std::vector<std::pair<std::string, Runner>> table{
        {"thm2", verify_thm2},       {"thm3", verify_thm3},       {"thm4", verify_thm4},
        {"prop5", verify_prop5},     {"prop6", verify_prop6},     {"prop10", verify_prop10},
        {"cor61", verify_cor61},     {"cor62", verify_cor62},     {"lemma12", verify_lemma12},
        {"lemma13", verify_lemma13}, {"lemmaB1", verify_lemma_b1}, {"lemmaB2", verify_lemma_b2},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& verify_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, run] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

bool verify_needs_body(const std::string& name) {
    return name != "prop6" && name != "lemmaB1" && name != "lemmaB2";
}

VerifyReport run_verify(const std::string& name, const VerifyContext& ctx) {
    for (const auto& [key, run] : registry())
        if (key == name) return run(ctx);
    fail(ErrorCode::InvalidArgument, "unknown statement '" + name + "'");
}

ordered_json number12(double x) {
    if (!std::isfinite(x)) return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

ordered_json to_json(const VerifyReport& r) {
    ordered_json j;
    j["statement"] = r.statement;
    j["samples"] = r.samples;
    j["worst_slack"] = number12(r.worst_slack);
    j["pass"] = r.pass;
    j["details"] = r.details;
    return j;
}

}  // namespace hilbert::cli
