#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hilbert/body_io.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/extremal_geometry.hpp"
#include "hilbert/hilbert_core.hpp"
#include "hilbert/measure_quadrature.hpp"
#include "hilbert/sampling.hpp"
#include "hilbert/simplex_analytic.hpp"
#include "svg.hpp"
#include "verify.hpp"

namespace hilbert::cli {

using nlohmann::ordered_json;

namespace {

std::string fmt12(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Point parse_point(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) fail(ErrorCode::InvalidArgument, std::string(what) + " must be x,y");
    try {
        std::size_t used = 0;
        const double x = std::stod(s.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument(s);
        const std::string rest = s.substr(comma + 1);
        const double y = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(s);
        return {x, y};
    } catch (const std::logic_error&) {
        fail(ErrorCode::InvalidArgument, std::string(what) + " must be x,y, got '" + s + "'");
    }
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            fail(ErrorCode::InvalidArgument, std::string(what) + " must be a comma-separated list of numbers");
        }
    }
    return out;
}

ordered_json point_json(const Point& p) { return ordered_json::array({number12(p.x), number12(p.y)}); }

ordered_json area_json(const AreaResult& r) {
    ordered_json j;
    j["value"] = number12(r.value);
    j["error"] = number12(r.error);
    j["verdict"] = verdict_name(r.verdict);
    j["cells"] = r.cells;
    return j;
}

ordered_json ellipse_json(const EllipseWithContacts& e) {
    ordered_json j;
    j["center"] = point_json(e.ellipse.center());
    j["semi_major"] = number12(e.ellipse.semi_major());
    j["semi_minor"] = number12(e.ellipse.semi_minor());
    j["rotation"] = number12(e.ellipse.rotation());
    j["area"] = number12(e.ellipse.area());
    j["contacts"] = ordered_json::array();
    for (const Point& c : e.contacts) j["contacts"].push_back(point_json(c));
    return j;
}

std::vector<Point> ellipse_outline(const Ellipse& e) {
    std::vector<Point> pts;
    for (int i = 0; i < 180; ++i) pts.push_back(e.from_unit_disk(direction(2.0 * kPi * i / 180.0)));
    return pts;
}

std::string shape_of(const UnitBallPolygon& ball) {
    if (ball.exactness == BallExactness::Sampled) return "smooth";
    switch (ball.corner_count()) {
        case 4: return "square";
        case 6: return "hexagon";
        case 8: return "octagon";
        default: return std::to_string(ball.corner_count()) + "-gon";
    }
}

// Options shared by every subcommand.
struct Options {
    std::string body;
    std::string p, q, v;
    std::vector<std::string> tri;
    double rel_tol{1e-6};
    double abs_tol{1e-9};
    std::uint64_t seed{0};
    std::string out;
    std::string svg;
    long samples{0};
    // sweep-alpha
    double from{0.05}, to{0.5};
    int steps{20};
    // probe
    std::string omega, a, b, t{"0.9,0.99,0.999"};
    double s{0.5};
    std::string statement;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--body", o.body, "body JSON file or one of disk, square, triangle, ellipse, trefoil, random");
    sub->add_option("--rel-tol", o.rel_tol, "relative tolerance of the quadrature")->check(CLI::PositiveNumber);
    sub->add_option("--abs-tol", o.abs_tol, "absolute tolerance of the quadrature")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "seed of the random generator (mt19937_64)");
    sub->add_option("--out", o.out, "write the result to this file instead of standard output");
    sub->add_option("--svg", o.svg, "also write an SVG figure to this file");
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    ConvexBody body() const {
        if (o_.body.empty()) fail(ErrorCode::InvalidArgument, "--body is required");
        return load_body(o_.body, o_.seed);
    }

    std::string body_id() const {
        if (o_.body.empty()) return "none";
        const std::filesystem::path path(o_.body);
        return path.has_extension() ? path.stem().string() : o_.body;
    }

    QuadratureOptions quad() const {
        QuadratureOptions q;
        q.rel_tol = o_.rel_tol;
        q.abs_tol = o_.abs_tol;
        return q;
    }

    Point point(const std::string& s, const char* name) const {
        if (s.empty()) fail(ErrorCode::InvalidArgument, std::string("--") + name + " is required");
        return parse_point(s, name);
    }

    std::array<Point, 3> triangle() const {
        if (o_.tri.size() != 3) fail(ErrorCode::InvalidArgument, "--tri needs three points x,y x,y x,y");
        return {parse_point(o_.tri[0], "--tri"), parse_point(o_.tri[1], "--tri"), parse_point(o_.tri[2], "--tri")};
    }

    void emit(const std::string& text) const {
        if (o_.out.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(o_.out, std::ios::binary);
        if (!f) fail(ErrorCode::InvalidArgument, "cannot write '" + o_.out + "'");
        f << text;
    }

    void figure(const ConvexBody& body, const std::vector<SvgLayer>& layers) const {
        if (o_.svg.empty()) return;
        std::ofstream f(o_.svg, std::ios::binary);
        if (!f) fail(ErrorCode::InvalidArgument, "cannot write '" + o_.svg + "'");
        f << render_svg(body, layers);
    }

    int dist() const {
        const ConvexBody b = body();
        emit(fmt12(hilbert_distance(b, point(o_.p, "p"), point(o_.q, "q"))) + "\n");
        return kOk;
    }

    int norm() const {
        const ConvexBody b = body();
        const Point v = point(o_.v, "v");
        emit(fmt12(finsler_norm(b, point(o_.p, "p"), v.as_vector())) + "\n");
        return kOk;
    }

    int ball() const {
        const ConvexBody b = body();
        const Point p = point(o_.p, "p");
        const UnitBallPolygon ball = unit_ball(b, p);
        const BallArea area = ball_area(b, p);
        ordered_json j;
        j["point"] = point_json(p);
        j["exact"] = ball.exactness == BallExactness::Exact;
        j["area"] = number12(area.value);
        j["area_error"] = number12(area.error);
        j["density"] = number12(kPi / area.value);
        j["shape"] = shape_of(ball);
        j["vertices"] = ordered_json::array();
        for (const Vector& w : ball.vertices) j["vertices"].push_back(point_json(Point{} + w));
        emit(j.dump(2) + "\n");
        // Draw the tangent ball around p, scaled to a quarter of the diameter.
        double radius = 0.0;
        for (const Vector& w : ball.vertices) radius = std::max(radius, w.norm());
        const double k = 0.25 * b.diameter() / radius;
        std::vector<Point> overlay;
        for (const Vector& w : ball.vertices) overlay.push_back(p + w * k);
        figure(b, {{"unit ball at p (scaled x" + fmt12(k) + ")", "#1f77b4", overlay, true},
                   {"p", "#d62728", {p}, false}});
        return kOk;
    }

    int area() const {
        const ConvexBody b = body();
        const auto t = triangle();
        const AreaResult r = region_area(b, {t[0], t[1], t[2]}, quad());
        emit("body_id,triangle_id,value,error,verdict\n" + body_id() + ",0," + fmt12(r.value) + "," +
             fmt12(r.error) + "," + verdict_name(r.verdict) + "\n");
        figure(b, {{"region", "#2ca02c", {t[0], t[1], t[2]}, true}});
        return kOk;
    }

    int ideal() const {
        const ConvexBody b = body();
        std::vector<IdealTriangle> tris;
        if (!o_.tri.empty()) {
            const auto t = triangle();
            tris.push_back(make_ideal_triangle(b, t[0], t[1], t[2]));
        } else {
            Rng rng(o_.seed);
            const long n = o_.samples > 0 ? o_.samples : 1;
            for (long i = 0; i < n; ++i) tris.push_back(random_ideal_triangle(b, rng));
        }
        std::string csv = "body_id,triangle_id,value,error,verdict\n";
        std::vector<SvgLayer> layers;
        for (std::size_t i = 0; i < tris.size(); ++i) {
            const AreaResult r = ideal_triangle_area(b, tris[i], quad());
            csv += body_id() + "," + std::to_string(i) + "," + fmt12(r.value) + "," + fmt12(r.error) + "," +
                   verdict_name(r.verdict) + "\n";
            const auto& v = tris[i].vertices;
            layers.push_back({"ideal triangle " + std::to_string(i), i == 0 ? "#d62728" : "#ff7f0e", {v[0], v[1], v[2]}, true});
        }
        emit(csv);
        figure(b, layers);
        return kOk;
    }

    int extremal(bool john) const {
        const ConvexBody b = body();
        const EllipseWithContacts e = john ? john_ellipse(b) : loewner_ellipse(b);
        emit(ellipse_json(e).dump(2) + "\n");
        figure(b, {{john ? "John ellipse" : "Loewner ellipse", "#1f77b4", ellipse_outline(e.ellipse), true},
                   {"contacts", "#d62728", e.contacts, false}});
        return kOk;
    }

    int sweep_alpha() const {
        if (!(o_.from > 0.0 && o_.to <= 0.5 && o_.from <= o_.to && o_.steps >= 1))
            fail(ErrorCode::OutOfRange, "need 0 < from <= to <= 1/2 and steps >= 1");
        const ConvexBody tri = make_standard_triangle();
        std::string csv = "alpha,t,area_closed,area_quadrature,abs_diff\n";
        for (int i = 0; i < o_.steps; ++i) {
            const double alpha = o_.steps == 1      ? o_.from
                                 : i == o_.steps - 1 ? o_.to
                                                     : o_.from + (o_.to - o_.from) * i / static_cast<double>(o_.steps - 1);
            const auto v = canonical_triangle(alpha);
            const double closed = ideal_area_closed(alpha);
            const AreaResult q = ideal_triangle_area(tri, make_ideal_triangle(tri, v[0], v[1], v[2]), quad());
            csv += fmt12(alpha) + "," + fmt12((1.0 - 2.0 * alpha) / alpha) + "," + fmt12(closed) + "," +
                   fmt12(q.value) + "," + fmt12(std::fabs(closed - q.value)) + "\n";
        }
        emit(csv);
        return kOk;
    }

    int verify() const {
        VerifyContext ctx;
        ctx.seed = o_.seed;
        ctx.opts = quad();
        ctx.samples = o_.samples;
        if (verify_needs_body(o_.statement) || !o_.body.empty()) ctx.body = body();
        const VerifyReport r = run_verify(o_.statement, ctx);
        emit(to_json(r).dump(2) + "\n");
        return r.pass ? kOk : kVerificationFailed;
    }

    int probe() const {
        const ConvexBody b = body();
        const std::vector<double> ts = parse_list(o_.t, "--t");
        const Point p = point(o_.p, "p");
        ProbeResult r;
        ordered_json j;
        std::vector<Point> outline;
        if (!o_.omega.empty()) {
            const Point omega = point(o_.omega, "omega");
            const Point q = point(o_.q, "q");
            r = corner_divergence_probe(b, omega, p, q, ts, quad());
            j["kind"] = "corner";
            outline = {p, omega, q};
        } else {
            const Point a = point(o_.a, "a");
            const Point c = point(o_.b, "b");
            r = flat_divergence_probe(b, p, a, c, o_.s, ts, quad());
            j["kind"] = "flat";
            j["s"] = number12(o_.s);
            outline = {p, a, c};
        }
        j["truncations"] = ordered_json::array();
        j["areas"] = ordered_json::array();
        for (std::size_t i = 0; i < r.truncations.size(); ++i) {
            j["truncations"].push_back(number12(r.truncations[i]));
            j["areas"].push_back(area_json(r.areas[i]));
        }
        j["verdict"] = verdict_name(r.verdict);
        j["tail"] = area_json(r.tail);
        j["tail"]["witness_levels"] = ordered_json::array();
        j["tail"]["witness_areas"] = ordered_json::array();
        for (double x : r.tail.witness_levels) j["tail"]["witness_levels"].push_back(number12(x));
        for (double x : r.tail.witness_areas) j["tail"]["witness_areas"].push_back(number12(x));
        emit(j.dump(2) + "\n");
        figure(b, {{"probe triangle", "#d62728", outline, true}});
        return kOk;
    }

private:
    const Options& o_;
    std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hilbert geometry of planar convex domains", "hilbert"};
    app.require_subcommand(1);
    Options o;

    auto* dist = app.add_subcommand("dist", "Hilbert distance between --p and --q");
    auto* norm = app.add_subcommand("norm", "Finsler norm of --v at --p");
    auto* ball = app.add_subcommand("ball", "unit ball at --p (JSON vertex list, area, shape)");
    auto* area = app.add_subcommand("area", "measure of the interior triangle --tri (CSV)");
    auto* ideal = app.add_subcommand("ideal", "area of the ideal triangle --tri, or of --samples random ones (CSV)");
    auto* john = app.add_subcommand("john", "maximal-area inscribed ellipse (JSON)");
    auto* loewner = app.add_subcommand("loewner", "minimal-area enclosing ellipse (JSON)");
    auto* sweep = app.add_subcommand("sweep-alpha", "closed form vs quadrature for T(alpha) (CSV)");
    auto* verify = app.add_subcommand("verify", "check a statement on random samples (JSON report)");
    auto* probe = app.add_subcommand("probe", "truncated areas near a corner (--omega) or a flat segment (--a, --b)");
    for (auto* sub : {dist, norm, ball, area, ideal, john, loewner, sweep, verify, probe}) add_common(sub, o);

    for (auto* sub : {dist, norm, ball, probe}) sub->add_option("--p", o.p, "point x,y");
    for (auto* sub : {dist, probe}) sub->add_option("--q", o.q, "point x,y");
    norm->add_option("--v", o.v, "tangent vector x,y");
    for (auto* sub : {area, ideal}) sub->add_option("--tri", o.tri, "three points x,y x,y x,y")->expected(3);
    for (auto* sub : {ideal, verify}) sub->add_option("--samples", o.samples, "number of random samples");
    sweep->add_option("--from", o.from, "smallest alpha");
    sweep->add_option("--to", o.to, "largest alpha");
    sweep->add_option("--steps", o.steps, "number of alpha values");
    verify->add_option("statement", o.statement, "statement to check")
        ->required()
        ->check(CLI::IsMember(verify_names()));
    probe->add_option("--omega", o.omega, "corner x,y");
    probe->add_option("--a", o.a, "flat segment start x,y");
    probe->add_option("--b", o.b, "flat segment end x,y");
    probe->add_option("--s", o.s, "inner level of the flat family");
    probe->add_option("--t", o.t, "truncation parameters, comma-separated");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsageError;
    }

    const Runner r(o, out);
    try {
        if (dist->parsed()) return r.dist();
        if (norm->parsed()) return r.norm();
        if (ball->parsed()) return r.ball();
        if (area->parsed()) return r.area();
        if (ideal->parsed()) return r.ideal();
        if (john->parsed()) return r.extremal(true);
        if (loewner->parsed()) return r.extremal(false);
        if (sweep->parsed()) return r.sweep_alpha();
        if (verify->parsed()) return r.verify();
        if (probe->parsed()) return r.probe();
    } catch (const HilbertError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace hilbert::cli
