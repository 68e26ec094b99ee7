// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hilbert/body_io.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/extremal_geometry.hpp"
#include "hilbert/hilbert_core.hpp"
#include "hilbert/measure_quadrature.hpp"
#include "hilbert/sampling.hpp"
#include "hilbert/simplex_analytic.hpp"

using namespace hilbert;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kMinArea = kPi * kPi * kPi / 24.0;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

QuadratureOptions tol(double rel) {
    QuadratureOptions o;
    o.rel_tol = rel;
    return o;
}

// Support bodies are integrated at 1e-4: their density costs a ball-area
// quadrature per point, and every check below has a margin well above that.
QuadratureOptions tol_for(const ConvexBody& body) { return tol(body.as_support() ? 1e-4 : 1e-6); }

ConvexBody trefoil() { return load_body("trefoil"); }

// 1. Ideal triangles of the disk and of the ellipse (2, 1) have area pi.
Outcome ellipse_universality() {
    double worst = 0.0;
    bool ok = true;
    for (const ConvexBody& body : {make_disk(), ConvexBody(Ellipse({0, 0}, 2.0, 1.0))}) {
        Rng rng(101);
        for (int i = 0; i < 20; ++i) {
            const AreaResult a = ideal_triangle_area(body, random_ideal_triangle(body, rng));
            const double dev = a.verdict == Verdict::Converged ? std::fabs(a.value - kPi) : kInf;
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-3 * kPi;
        }
    }
    return {ok, fmt("40 triangles, max |area - pi| = %.3e", worst)};
}

// 2. T(1/2) in the standard triangle.
Outcome minimum_value() {
    const ConvexBody tri = make_standard_triangle();
    const auto v = canonical_triangle(0.5);
    const AreaResult q = ideal_triangle_area(tri, make_ideal_triangle(tri, v[0], v[1], v[2]));
    const double rel = std::fabs(q.value - kMinArea) / kMinArea;
    const double closed = std::fabs(ideal_area_closed(0.5) - kMinArea);
    return {rel <= 1e-4 && closed <= 1e-12, fmt("quadrature rel err %.2e, closed form err %.2e", rel, closed)};
}

// 3. Closed form against quadrature on an alpha grid.
Outcome closed_vs_quadrature() {
    const ConvexBody tri = make_standard_triangle();
    double worst_ratio = 0.0, prev = kInf;
    bool ok = true, decreasing = true;
    for (int i = 1; i <= 20; ++i) {
        const double alpha = 0.05 + 0.45 * i / 20.0;
        const auto v = canonical_triangle(alpha);
        const double closed = ideal_area_closed(alpha);
        const AreaResult q = ideal_triangle_area(tri, make_ideal_triangle(tri, v[0], v[1], v[2]));
        const double allowed = std::max(1e-5, 1e-4 * closed);
        worst_ratio = std::max(worst_ratio, std::fabs(closed - q.value) / allowed);
        ok = ok && std::fabs(closed - q.value) <= allowed;
        decreasing = decreasing && closed < prev;
        prev = closed;
    }
    return {ok && decreasing,
            fmt("20 alphas in (0.05, 0.5], max |diff| / allowed = %.3f, decreasing = %.0f", worst_ratio,
                decreasing)};
}

// 4. Central differences of F against F'.
Outcome derivative_consistency() {
    double worst = 0.0;
    bool positive = true;
    for (double t : {0.01, 0.1, 1.0, 5.0, 10.0}) {
        const double h = 1e-4 * std::min(1.0, t);
        const double fd = (f_closed(t + h) - f_closed(t - h)) / (2.0 * h);
        worst = std::max(worst, std::fabs(fd - f_prime(t)));
        positive = positive && f_prime(t) > 0.0;
    }
    for (int k = 1; k <= 1000; ++k) positive = positive && f_prime(0.02 * k) > 0.0;
    return {worst <= 1e-6 && positive, fmt("max |FD - F'| = %.2e, F' > 0 on the grid = %.0f", worst, positive)};
}

// 5. Ball areas in the square and ball shapes.
Outcome square_balls() {
    const ConvexBody sq = make_square();
    Rng rng(505);
    double worst = kInf;
    for (int i = 0; i < 10000; ++i) {
        const Point p{rng.uniform(-0.999, 0.999), rng.uniform(-0.999, 0.999)};
        const double area = ball_area(sq, p).value;
        const double g = (1.0 - p.x * p.x) * (1.0 - p.y * p.y);
        worst = std::min({worst, area - 2.0 * g, 4.0 * g - area});
    }
    int mismatches = 0;
    for (int k = 0; k < 100; ++k) {
        Point p{};
        std::size_t expected = 4;
        if (k >= 1 && k < 34) {
            const double a = 0.95 * k / 34.0;
            p = {k % 2 ? a : -a, k % 4 < 2 ? a : -a};
            expected = 6;
        } else if (k >= 34) {
            const double x = -0.9 + 1.8 * (k - 34) / 66.0;
            p = {x, 0.37 * x + 0.21};
            if (std::fabs(std::fabs(p.x) - std::fabs(p.y)) < 1e-3) p.y += 0.05;
            expected = 8;
        }
        if (unit_ball(sq, p).corner_count() != expected) ++mismatches;
    }
    return {worst >= -1e-12 && mismatches == 0,
            fmt("10^4 points, worst slack %.3e; 100 shape samples, %.0f mismatches", worst, mismatches)};
}

// 6. Monotonicity under inclusion.
Outcome nested_monotonicity() {
    struct Pair {
        ConvexBody inner, outer;
    };
    const std::vector<Pair> pairs{
        {make_disk(0.9), make_square()},
        {make_regular_polygon(6, 0.8), make_disk()},
        {ConvexBody(Ellipse({0, 0}, 1.5, 0.8, 0.2)), ConvexBody(Ellipse({0, 0}, 2.0, 1.0))},
        {ConvexBody(Polygon({{0.1, 0.1}, {0.8, 0.1}, {0.1, 0.8}})), make_standard_triangle()},
        {make_disk(0.85), trefoil()},
    };
    Rng rng(606);
    double worst = kInf;
    int regions = 0;
    for (const Pair& pr : pairs) {
        for (int i = 0; i < 200; ++i) {
            const Point p = random_interior_point(pr.inner, rng, 1e-3);
            const Vector v = direction(rng.uniform(0.0, 2.0 * kPi));
            worst = std::min(worst, finsler_norm(pr.inner, p, v) - finsler_norm(pr.outer, p, v));
            worst = std::min(worst, unit_ball(pr.outer, p).area() - unit_ball(pr.inner, p).area());
        }
        for (int i = 0; i < 3; ++i) {
            const std::vector<Point> tri{random_interior_point(pr.inner, rng, 0.02),
                                         random_interior_point(pr.inner, rng, 0.02),
                                         random_interior_point(pr.inner, rng, 0.02)};
            if (std::fabs(orient2d(tri[0], tri[1], tri[2])) < 1e-4) continue;
            const AreaResult a = region_area(pr.inner, tri, tol_for(pr.inner));
            const AreaResult b = region_area(pr.outer, tri, tol_for(pr.outer));
            worst = std::min(worst, a.value - b.value);
            ++regions;
        }
    }
    return {worst >= -1e-10, fmt("5 pairs, 1000 (p, v), %.0f regions, worst slack %.3e", regions, worst)};
}

// 7. Lower bound pi^3/24 on random ideal triangles.
Outcome global_floor() {
    struct Batch {
        ConvexBody body;
        int count;
    };
    Rng poly_rng(707);
    const std::vector<Batch> batches{
        {make_square(), 35},
        {ConvexBody(random_convex_polygon(poly_rng, 5)), 35},
        {make_standard_triangle(), 30},
        {make_disk(), 25},
        {ConvexBody(Ellipse({0, 0}, 2.0, 1.0)), 25},
        {trefoil(), 50},
    };
    Rng rng(708);
    double min_area = kInf;
    int converged = 0, divergent = 0, inconclusive = 0;
    for (const Batch& b : batches) {
        for (int i = 0; i < b.count; ++i) {
            const AreaResult a = ideal_triangle_area(b.body, random_ideal_triangle(b.body, rng), tol_for(b.body));
            if (a.verdict == Verdict::Converged) {
                ++converged;
                min_area = std::min(min_area, a.value);
            } else if (a.verdict == Verdict::Divergent) {
                ++divergent;
            } else {
                ++inconclusive;
            }
        }
    }
    return {min_area >= kMinArea - 1e-4,
            fmt("200 triangles: %.0f converged (min %.6f), %.0f divergent, %.0f inconclusive", converged, min_area,
                divergent, inconclusive)};
}

// 8. Flat boundary family in the square.
Outcome flat_divergence() {
    const std::vector<double> ts{0.9, 0.99, 0.999};
    const ProbeResult r = flat_divergence_probe(make_square(), {0, 0}, {-0.5, 1}, {0.5, 1}, 0.5, ts);
    bool ok = r.verdict == Verdict::Divergent;
    double prev = 0.0, worst = kInf;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double bound = 0.5 * kPi * std::atanh(0.25) * (std::atanh(ts[i]) - std::atanh(0.5));
        worst = std::min(worst, r.areas[i].value - bound);
        ok = ok && r.areas[i].value > bound && r.areas[i].value > prev;
        prev = r.areas[i].value;
    }
    const bool capped = !r.tail.witness_areas.empty() && r.tail.witness_areas.back() > 1e4 &&
                        std::isfinite(r.tail.witness_levels.back());
    return {ok && capped, fmt("areas %.4f %.4f %.4f, min margin over bound %.4f", r.areas[0].value,
                              r.areas[1].value, r.areas[2].value, worst)};
}

// 9. Corner triangle in the square.
Outcome corner_divergence() {
    const ConvexBody sq = make_square();
    const AreaResult a = ideal_triangle_area(sq, make_ideal_triangle(sq, {0.0, 0.5}, {1, 1}, {0.5, 0.0}));
    const ProbeResult p = corner_divergence_probe(sq, {1, 1}, {0.0, 0.5}, {0.5, 0.0}, {0.9, 0.99, 0.999});
    const bool increasing = p.areas[0].value < p.areas[1].value && p.areas[1].value < p.areas[2].value;
    return {a.verdict == Verdict::Divergent && p.verdict == Verdict::Divergent && increasing,
            "triangle verdict " + verdict_name(a.verdict) + ", probe areas " +
                fmt("%.4f %.4f %.4f", p.areas[0].value, p.areas[1].value, p.areas[2].value)};
}

// 10. Inner and outer witnesses; ellipses are recognized.
Outcome dichotomy() {
    Rng rng(1010);
    const std::vector<ConvexBody> bodies{make_square(), ConvexBody(random_convex_polygon(rng, 5))};
    bool ok = true;
    std::string detail;
    for (const ConvexBody& body : bodies) {
        const Theorem2Witnesses w = theorem2_witnesses(body);
        const bool inner = w.inner_area.verdict == Verdict::Converged && w.inner_area.value < kPi - 1e-3;
        const bool outer =
            (w.outer_area.verdict == Verdict::Converged && w.outer_area.value > kPi) ||
            (w.outer_area.verdict == Verdict::Divergent && !w.outer_area.witness_areas.empty() &&
             w.outer_area.witness_areas.back() > kPi);
        ok = ok && inner && outer;
        detail += fmt("inner %.4f, outer ", w.inner_area.value) +
                  (w.outer_area.verdict == Verdict::Divergent ? std::string("divergent")
                                                              : fmt("%.4f", w.outer_area.value)) +
                  "; ";
    }
    bool ellipse_flagged = false;
    try {
        theorem2_witnesses(ConvexBody(Ellipse({0, 0}, 2.0, 1.0)));
    } catch (const HilbertError& e) {
        ellipse_flagged = e.code() == ErrorCode::BodyIsEllipse;
    }
    return {ok && ellipse_flagged, detail + (ellipse_flagged ? "ellipse flagged" : "ellipse not flagged")};
}

// 11. Uniform upper bound on smooth bodies.
Outcome uniform_bound() {
    bool ok = true;
    std::string detail;
    for (const ConvexBody& body : {ConvexBody(Ellipse({0, 0}, 2.0, 1.0)), trefoil()}) {
        const QuadratureOptions o = tol_for(body);
        const BoundCertificate c = theorem4_bound(body, o);
        const bool fields = c.delta == c.r * c.r * c.r / (4.0 * c.R * c.R) &&
                            c.n_cap == static_cast<long>(std::floor(2.0 * c.R / c.r)) &&
                            c.bound == 2.0 * kPi * static_cast<double>(c.n_cap + 1) + c.core.value &&
                            c.core.verdict == Verdict::Converged;
        Rng rng(1111);
        double max_area = 0.0;
        bool all_conv = true;
        for (int i = 0; i < 50; ++i) {
            const AreaResult a = ideal_triangle_area(body, random_ideal_triangle(body, rng), o);
            all_conv = all_conv && a.verdict == Verdict::Converged;
            max_area = std::max(max_area, a.value);
        }
        ok = ok && fields && all_conv && max_area <= c.bound;
        detail += fmt("max area %.4f <= bound %.4f (n %.0f); ", max_area, c.bound, static_cast<double>(c.n_cap));
    }
    return {ok, detail};
}

// 12. Appendix inequalities.
Outcome appendix_suite() {
    Rng rng(1212);
    double worst = kInf;
    long violations = 0;
    for (int i = 0; i < 20000; ++i) {
        const double rho = rng.uniform(0.05, 2.0);
        const double rho2 = rho * rng.uniform(1.0 + 1e-6, 5.0);
        const double my = i < 10000 ? rho * rng.uniform() : 0.0;
        const LemmaB1Result l = lemma_b1_check(rho, rho2, my, direction(rng.uniform(0.0, 2.0 * kPi)));
        worst = std::min(worst, l.tangent_case ? std::min(l.slack, l.tangent_slack) : l.slack);
        violations += !l.holds;
    }
    const double h_max = 1.0 - std::sqrt(3.0) / 2.0;
    for (int i = 0; i < 10000; ++i) {
        const double r = rng.uniform(0.01, 10.0);
        const LemmaB2Result l = lemma_b2_check(r, r * h_max * rng.uniform());
        worst = std::min(worst, l.slack);
        violations += !l.holds;
    }
    const ConvexBody el(Ellipse({0, 0}, 2.0, 1.0));
    for (int i = 0; i < 10000; ++i) {
        const Point a = random_boundary_point(el, rng);
        const Point b = random_boundary_point(el, rng);
        if (distance(a, b) < 1e-9) continue;
        const Lemma12Result l = lemma12_check(el, a, b);
        worst = std::min(worst, l.slack);
        violations += !l.holds;
    }
    const RollingRadii rr = rolling_radii(el);
    for (int i = 0; i < 100; ++i) {
        const double t = rng.uniform();
        double dt = 0.25 * rng.uniform(0.05, 1.0);
        while (distance(boundary_point_at_parameter(el, t), boundary_point_at_parameter(el, t + dt)) > rr.r) dt *= 0.5;
        const Lemma13Result l = lemma13_rectangle(el, boundary_point_at_parameter(el, t),
                                                  boundary_point_at_parameter(el, t + dt));
        worst = std::min(worst, l.cap - l.area.value);
        violations += !l.holds;
    }
    return {violations == 0 && worst >= -1e-12,
            fmt("B.1 2x10^4, B.2 10^4, chord clearance 10^4, rectangles 100: %.0f violations, worst slack %.3e",
                static_cast<double>(violations), worst)};
}

// Axes of A(circle of radius s) for a 2x2 linear map: s times its singular values.
std::pair<double, double> image_axes(double a11, double a12, double a21, double a22, double s) {
    const double p = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
    const double det = std::fabs(a11 * a22 - a12 * a21);
    const double big = std::sqrt(0.5 * (p + std::sqrt(std::max(0.0, p * p - 4.0 * det * det))));
    return {s * big, s * det / big};
}

// 13. Extremal ellipses of a triangle and of the square.
Outcome extremal_ellipses() {
    bool ok = true;
    double worst = 0.0;
    for (const std::array<Point, 3>& t : {std::array<Point, 3>{Point{0, 0}, Point{1, 0}, Point{0, 1}},
                                          std::array<Point, 3>{Point{0, 0}, Point{3, 0.5}, Point{1, 2}}}) {
        const ConvexBody body(Polygon({t[0], t[1], t[2]}));
        // Oracle: the affine image of the equilateral triangle with unit
        // circumradius, whose inscribed and circumscribed circles have radii 1/2 and 1.
        const std::array<Point, 3> eq{Point{1, 0}, Point{-0.5, std::sqrt(3.0) / 2}, Point{-0.5, -std::sqrt(3.0) / 2}};
        const AffineMap m = AffineMap::from_triangles(eq, t);
        const auto [in_a, in_b] = image_axes(m.a11, m.a12, m.a21, m.a22, 0.5);
        const auto [out_a, out_b] = image_axes(m.a11, m.a12, m.a21, m.a22, 1.0);
        const Point g{(t[0].x + t[1].x + t[2].x) / 3, (t[0].y + t[1].y + t[2].y) / 3};

        const EllipseWithContacts j = john_ellipse(body);
        const EllipseWithContacts l = loewner_ellipse(body);
        const auto near = [](const std::vector<Point>& pts, const Point& q) {
            double d = kInf;
            for (const Point& p : pts) d = std::min(d, distance(p, q));
            return d;
        };
        for (int k = 0; k < 3; ++k) {
            worst = std::max(worst, near(j.contacts, midpoint(t[k], t[(k + 1) % 3])));
            worst = std::max(worst, near(l.contacts, t[k]));
        }
        worst = std::max({worst, distance(j.ellipse.center(), g), distance(l.ellipse.center(), g),
                          std::fabs(j.ellipse.semi_major() - in_a), std::fabs(j.ellipse.semi_minor() - in_b),
                          std::fabs(l.ellipse.semi_major() - out_a), std::fabs(l.ellipse.semi_minor() - out_b)});
        ok = ok && j.contacts.size() == 3 && l.contacts.size() == 3;
    }
    const ConvexBody sq = make_square();
    const EllipseWithContacts js = john_ellipse(sq);
    const EllipseWithContacts ls = loewner_ellipse(sq);
    worst = std::max({worst, std::fabs(js.ellipse.semi_major() - 1.0), std::fabs(js.ellipse.semi_minor() - 1.0),
                      std::fabs(ls.ellipse.semi_major() - std::sqrt(2.0)),
                      std::fabs(ls.ellipse.semi_minor() - std::sqrt(2.0)), js.ellipse.center().as_vector().norm(),
                      ls.ellipse.center().as_vector().norm()});
    return {ok && worst <= 1e-6, fmt("2 triangles and the square, max deviation %.2e", worst)};
}

// 14. Same seed, same bytes.
Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "hilbert_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::vector<std::string>> commands{
        {"ideal", "--body", "random", "--samples", "6", "--seed", "14"},
        {"ideal", "--body", "trefoil", "--samples", "2", "--seed", "14", "--rel-tol", "1e-4"},
        {"verify", "thm3", "--body", "random", "--seed", "7", "--samples", "10"},
        {"verify", "lemma12", "--body", "ellipse", "--seed", "3", "--samples", "500"},
        {"sweep-alpha", "--from", "0.1", "--to", "0.5", "--steps", "4"},
        {"john", "--body", "random", "--seed", "2"},
    };
    const auto read = [](const std::filesystem::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    };
    bool ok = true;
    int compared = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::array<std::string, 2> runs;
        for (int k = 0; k < 2; ++k) {
            const auto file = dir / ("out" + std::to_string(i) + "_" + std::to_string(k));
            const auto svg = dir / ("fig" + std::to_string(i) + "_" + std::to_string(k) + ".svg");
            std::vector<std::string> args = commands[i];
            args.insert(args.end(), {"--out", file.string()});
            if (args[0] != "sweep-alpha" && args[0] != "verify") args.insert(args.end(), {"--svg", svg.string()});
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            ok = ok && code == 0;
            runs[k] = read(file) + (std::filesystem::exists(svg) ? read(svg) : "");
        }
        ok = ok && !runs[0].empty() && runs[0] == runs[1];
        ++compared;
    }
    std::filesystem::remove_all(dir);
    return {ok, fmt("%.0f commands run twice, outputs byte-identical", compared)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"ellipse universality", ellipse_universality},
        {"minimum value pi^3/24", minimum_value},
        {"closed form vs quadrature", closed_vs_quadrature},
        {"derivative consistency", derivative_consistency},
        {"square ball sandwich and shapes", square_balls},
        {"monotonicity under inclusion", nested_monotonicity},
        {"global floor pi^3/24", global_floor},
        {"flat boundary divergence", flat_divergence},
        {"corner divergence", corner_divergence},
        {"ellipse dichotomy witnesses", dichotomy},
        {"uniform bound on smooth bodies", uniform_bound},
        {"appendix inequalities", appendix_suite},
        {"John and Loewner ellipses", extremal_ellipses},
        {"deterministic output", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %2zu %-32s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
