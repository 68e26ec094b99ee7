#include "hilbert/measure_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include <json.hpp>

#include "hilbert/hilbert_core.hpp"

namespace hilbert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ------------------------------------------------------------------ rules

using RulePoint = detail::TriangleRuleNode;

std::vector<RulePoint> expand(double w, double a, double b, double c) {
    std::vector<RulePoint> out;
    const std::array<std::array<double, 3>, 6> perms{
        {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
    for (const auto& p : perms) {
        const bool seen = std::any_of(out.begin(), out.end(), [&](const RulePoint& q) {
            return q.l1 == p[0] && q.l2 == p[1] && q.l3 == p[2];
        });
        if (!seen) out.push_back({p[0], p[1], p[2], w});
    }
    return out;
}

// Degree-7 rule (13 points) and degree-5 rule (7 points); weights sum to 1.
std::vector<RulePoint> make_degree7() {
    std::vector<RulePoint> r;
    const auto add = [&](std::vector<RulePoint> v) { r.insert(r.end(), v.begin(), v.end()); };
    add(expand(-0.149570044467682, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0));
    add(expand(0.175615257433208, 0.260345966079040, 0.260345966079040, 0.479308067841920));
    add(expand(0.053347235608838, 0.065130102902216, 0.065130102902216, 0.869739794195568));
    add(expand(0.077113760890257, 0.048690315425316, 0.312865496004874, 0.638444188569810));
    return r;
}

std::vector<RulePoint> make_degree5() {
    const double s = std::sqrt(15.0);
    const double a = (6.0 - s) / 21.0;
    const double b = (6.0 + s) / 21.0;
    std::vector<RulePoint> r = expand(9.0 / 40.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    const auto add = [&](std::vector<RulePoint> v) { r.insert(r.end(), v.begin(), v.end()); };
    add(expand((155.0 - s) / 1200.0, a, a, 1.0 - 2.0 * a));
    add(expand((155.0 + s) / 1200.0, b, b, 1.0 - 2.0 * b));
    return r;
}

const std::vector<RulePoint>& degree7() {
    static const std::vector<RulePoint> r = make_degree7();
    return r;
}

const std::vector<RulePoint>& degree5() {
    static const std::vector<RulePoint> r = make_degree5();
    return r;
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

// ---------------------------------------------------------------- density

class DensityField {
public:
    DensityField(const ConvexBody& body, double rel_tol)
        : body_(body), rel_tol_(std::clamp(0.1 * rel_tol, 1e-10, 1e-4)) {}

    // NaN when p cannot be evaluated (outside, or on the boundary to rounding).
    double operator()(const Point& p) const {
        try {
            double err = 0.0;
            const double h = quadrature_density(body_, p, rel_tol_, &err);
            max_rel_err_ = std::max(max_rel_err_, err);
            return h;
        } catch (const HilbertError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }

    // Density at apex + lam * e. For an ellipse apex on the boundary the gap
    // 1 - |w|^2 is expanded around the apex, so rounding of the apex cannot
    // push points next to it outside.
    double along(const Point& apex, const Vector& e, double lam) const {
        if (const auto* el = body_.as_ellipse()) {
            const Vector wa = el->to_unit_disk(apex);
            const double ra = wa.norm();
            if (std::fabs(ra - 1.0) <= 1e-12) {
                const Vector u = wa / ra;
                const Vector d = el->to_unit_disk(apex + e) - wa;
                const double gap = -lam * (2.0 * dot(u, d) + lam * dot(d, d));
                if (!(gap > 0.0)) return std::numeric_limits<double>::quiet_NaN();
                return 1.0 / (gap * std::sqrt(gap) * el->semi_major() * el->semi_minor());
            }
        }
        return (*this)(apex + e * lam);
    }

    double max_rel_err() const { return max_rel_err_; }

private:
    const ConvexBody& body_;
    double rel_tol_;
    mutable double max_rel_err_{0.0};
};

// ------------------------------------------------------- adaptive cubature

using P2 = std::array<double, 2>;
using Integrand = std::function<double(double, double)>;

struct Cell {
    std::array<P2, 3> v;
    std::size_t patch;
    std::size_t id;
    double q7{0.0};
    double err{0.0};
    bool ok{true};
};

class Cubature {
public:
    Cubature(std::vector<Integrand> patches, const QuadratureOptions& opts)
        : patches_(std::move(patches)), opts_(opts) {}

    void add_triangle(std::size_t patch, P2 a, P2 b, P2 c) {
        Cell cell{{a, b, c}, patch, next_id_++};
        evaluate(cell);
        push(std::move(cell));
    }

    void add_rectangle(std::size_t patch, double u0, double u1, double w0, double w1) {
        add_triangle(patch, {u0, w0}, {u1, w0}, {u1, w1});
        add_triangle(patch, {u0, w0}, {u1, w1}, {u0, w1});
    }

    AreaResult run() {
        AreaResult out;
        bool failed = false;
        for (;;) {
            double total = 0.0, total_err = 0.0;
            sums(total, total_err, failed);
            if (failed) break;
            const double tol = std::max(opts_.abs_tol, opts_.rel_tol * std::fabs(total));
            if (total_err <= tol) {
                out.verdict = Verdict::Converged;
                break;
            }
            if (live_ >= opts_.max_cells) {
                out.verdict = Verdict::Inconclusive;
                break;
            }
            // Refine the worst cells until their errors account for the excess.
            double removed = 0.0;
            const double excess = total_err - 0.5 * tol;
            while (!queue_.empty() && removed < excess && live_ < opts_.max_cells) {
                const std::size_t idx = queue_.top().second;
                queue_.pop();
                Cell parent = cells_[idx];
                cells_[idx].ok = false;
                dead_[idx] = true;
                --live_;
                removed += parent.err;
                split(parent);
            }
        }
        double total = 0.0, total_err = 0.0;
        sums(total, total_err, failed);
        out.value = total;
        out.error = total_err;
        out.cells = live_;
        if (failed) out.verdict = Verdict::Inconclusive;
        return out;
    }

private:
    struct Key {
        double err;
        std::size_t id;
        bool operator<(const Key& o) const {
            if (err != o.err) return err < o.err;
            return id > o.id;
        }
    };

    void evaluate(Cell& c) const {
        const auto& [a, b, d] = c.v;
        const double jac =
            0.5 * std::fabs((b[0] - a[0]) * (d[1] - a[1]) - (b[1] - a[1]) * (d[0] - a[0]));
        const Integrand& f = patches_[c.patch];
        const auto at = [&](const RulePoint& r) {
            return f(r.l1 * a[0] + r.l2 * b[0] + r.l3 * d[0], r.l1 * a[1] + r.l2 * b[1] + r.l3 * d[1]);
        };
        double q7 = 0.0, q5 = 0.0;
        double centroid = std::numeric_limits<double>::quiet_NaN();
        for (const RulePoint& r : degree7()) {
            const double v = at(r);
            if (r.l1 == r.l2 && r.l2 == r.l3) centroid = v;
            q7 += r.weight * v;
        }
        for (const RulePoint& r : degree5())
            q5 += r.weight * ((r.l1 == r.l2 && r.l2 == r.l3) ? centroid : at(r));
        c.q7 = q7 * jac;
        c.err = std::fabs(q7 - q5) * jac;
        c.ok = std::isfinite(c.q7) && std::isfinite(c.err);
    }

    void push(Cell cell) {
        const std::size_t idx = cells_.size();
        queue_.push({Key{cell.ok ? cell.err : kInf, cell.id}, idx});
        cells_.push_back(std::move(cell));
        dead_.push_back(false);
        ++live_;
    }

    void split(const Cell& c) {
        // Longest-edge bisection; ties resolved by edge order.
        const auto len2 = [](const P2& p, const P2& q) {
            return (p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]);
        };
        std::size_t e = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < 3; ++i) {
            const double l = len2(c.v[i], c.v[(i + 1) % 3]);
            if (l > best) {
                best = l;
                e = i;
            }
        }
        const P2& p = c.v[e];
        const P2& q = c.v[(e + 1) % 3];
        const P2& r = c.v[(e + 2) % 3];
        const P2 m{0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
        Cell a{{p, m, r}, c.patch, next_id_++};
        Cell b{{m, q, r}, c.patch, next_id_++};
        evaluate(a);
        evaluate(b);
        push(std::move(a));
        push(std::move(b));
    }

    void sums(double& total, double& total_err, bool& failed) const {
        std::vector<std::pair<std::size_t, std::size_t>> order;
        order.reserve(live_);
        for (std::size_t i = 0; i < cells_.size(); ++i)
            if (!dead_[i]) order.push_back({cells_[i].id, i});
        std::sort(order.begin(), order.end());
        std::vector<double> v, e;
        v.reserve(order.size());
        e.reserve(order.size());
        failed = false;
        for (const auto& [id, i] : order) {
            if (!cells_[i].ok) failed = true;
            v.push_back(cells_[i].q7);
            e.push_back(cells_[i].err);
        }
        total = pairwise_sum(v.data(), v.size());
        total_err = pairwise_sum(e.data(), e.size());
    }

    std::vector<Integrand> patches_;
    QuadratureOptions opts_;
    std::vector<Cell> cells_;
    std::vector<bool> dead_;
    std::priority_queue<std::pair<Key, std::size_t>> queue_;
    std::size_t next_id_{0};
    std::size_t live_{0};
};

AreaResult finish(AreaResult r, const DensityField& h) {
    r.error += h.max_rel_err() * std::fabs(r.value);
    return r;
}

void validate(const QuadratureOptions& o) {
    if (!(o.rel_tol > 0.0 && o.abs_tol > 0.0 && o.max_cells > 0 && o.divergence_cap > 0.0))
        fail(ErrorCode::InvalidArgument, "quadrature options must be positive");
}

// ------------------------------------------------------------ integrands

// Patch at apex A over the triangle A, M0, G with A + w^2 (M(u) - A); the
// integrand stays bounded when A is a smooth or flat-edge boundary point.
// M0 is the midpoint of a side. When that midpoint is close to the boundary
// relative to G (a short chord), the integrand has a ridge of width
// delta = d(M0) / d(G) along u = 0, and u = delta ((1 + 1/delta)^s - 1)
// flattens it.
Integrand power_patch(const DensityField& h, const ConvexBody& body, Point apex, Point m0, Point g) {
    const double k = std::fabs(cross(g - m0, m0 - apex));
    const double d0 = boundary_distance(body, m0);
    const double dg = boundary_distance(body, g);
    if (!(d0 < 0.25 * dg)) {
        return [&h, apex, m0, g, k](double u, double w) {
            const Point m = lerp(m0, g, u);
            const double lam = w * w;
            return h.along(apex, m - apex, lam) * 2.0 * w * lam * k;
        };
    }
    const double delta = std::max(d0 / dg, 1e-14);
    const double rate = std::log1p(1.0 / delta);
    return [&h, apex, m0, g, k, delta, rate](double s, double w) {
        const double u = delta * std::expm1(rate * s);
        const Point m = lerp(m0, g, u);
        const double lam = w * w;
        return h.along(apex, m - apex, lam) * 2.0 * w * lam * k * rate * (u + delta);
    };
}

// Patch at apex A with lambda = exp(-xi): the corner-scaled integrand
// h(A + lambda (M(u) - A)) lambda^2 |M1 - M0, M0 - A| tends to a constant
// when A is a corner.
Integrand corner_patch(const DensityField& h, Point apex, Point m0, Point m1) {
    const double k = std::fabs(cross(m1 - m0, m0 - apex));
    return [&h, apex, m0, m1, k](double u, double xi) {
        const Point m = lerp(m0, m1, u);
        const double lam = std::exp(-xi);
        return h(apex + (m - apex) * lam) * lam * lam * k;
    };
}

// Points C + tau (Q(u) - C) with tau = 1 - exp(-xi) and Q on [Q0, Q1]; the
// far side is the singular one.
Integrand flat_patch(const DensityField& h, Point c, Point q0, Point q1) {
    const double k = std::fabs(cross(q1 - q0, q0 - c));
    return [&h, c, q0, q1, k](double u, double xi) {
        const Point q = lerp(q0, q1, u);
        const double gap = std::exp(-xi);
        const double tau = 1.0 - gap;
        return h(c + (q - c) * tau) * tau * gap * k;
    };
}

// Area of one parameter rectangle of a single patch.
AreaResult integrate_rectangle(const Integrand& f, double u0, double u1, double w0, double w1,
                               const QuadratureOptions& opts) {
    Cubature cub({f}, opts);
    cub.add_rectangle(0, u0, u1, w0, w1);
    return cub.run();
}

// ----------------------------------------------------- divergence analysis

// Slabs [xi, xi + 1] of a log-scaled family added to a truncated area. The
// family is Divergent when three consecutive slab increments agree to 1 %
// (the integrand has reached its scale-invariant limit, so the truncated
// area grows linearly in xi) and Converged when they decay geometrically.
AreaResult divergence_analysis(const std::function<AreaResult(double, double)>& slab,
                               double xi_start, double base_area, double base_error,
                               std::size_t base_cells, const QuadratureOptions& opts) {
    constexpr double kXiLimit = 24.0;
    AreaResult out;
    out.cells = base_cells;
    double area = base_area;
    double error = base_error;
    out.witness_levels.push_back(xi_start);
    out.witness_areas.push_back(area);
    std::vector<double> inc;
    for (double xi = xi_start; xi + 1.0 <= xi_start + kXiLimit; xi += 1.0) {
        const AreaResult d = slab(xi, xi + 1.0);
        out.cells += d.cells;
        if (d.verdict != Verdict::Converged) break;
        area += d.value;
        error += d.error;
        inc.push_back(d.value);
        out.witness_levels.push_back(xi + 1.0);
        out.witness_areas.push_back(area);
        const std::size_t n = inc.size();
        if (n < 3) continue;
        const double d0 = inc[n - 3], d1 = inc[n - 2], d2 = inc[n - 1];
        if (d0 > 0.0 && std::fabs(d1 / d0 - 1.0) < 0.01 && std::fabs(d2 / d1 - 1.0) < 0.01) {
            // Linear continuation with the smallest recent rate, at doubling
            // levels, until the cap is passed.
            const double rate = std::min({d0, d1, d2});
            out.witness_computed = out.witness_levels.size();
            double level = xi + 1.0;
            double a = area;
            while (a <= opts.divergence_cap) {
                const double next = 2.0 * level;
                a += rate * (next - level);
                level = next;
                out.witness_levels.push_back(level);
                out.witness_areas.push_back(a);
            }
            out.value = kInf;
            out.error = 0.0;
            out.verdict = Verdict::Divergent;
            return out;
        }
        const double r1 = d1 / d0, r2 = d2 / d1;
        if (r1 >= 0.0 && r2 >= 0.0 && r1 < 0.9 && r2 < 0.9) {
            const double r = std::max(r1, r2);
            const double tail = d2 * r / (1.0 - r);
            if (tail <= std::max(opts.abs_tol, opts.rel_tol * area)) {
                out.value = area + tail;
                out.error = error + tail;
                out.verdict = Verdict::Converged;
                out.witness_levels.clear();
                out.witness_areas.clear();
                return out;
            }
        }
    }
    out.value = area;
    out.error = error;
    out.verdict = Verdict::Inconclusive;
    out.witness_computed = out.witness_levels.size();
    return out;
}

// contains() with the eps_geom band for polygons too, so that vertices
// computed in floating point still count as boundary points.
Location locate(const ConvexBody& body, const Point& p) {
    if (!body.is_polygon() || !is_finite(p)) return contains(body, p);
    const double d = boundary_distance(body, p);
    if (std::fabs(d) <= body.eps_geom()) return Location::Boundary;
    return d > 0.0 ? Location::Interior : Location::Exterior;
}

bool on_boundary(const ConvexBody& body, const Point& p) {
    return locate(body, p) == Location::Boundary;
}

std::vector<Point> clip(const std::vector<Point>& poly, const Vector& n, double level) {
    // Keep {x : n.x <= level}.
    std::vector<Point> out;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % m];
        const double fa = dot(n, a.as_vector()) - level;
        const double fb = dot(n, b.as_vector()) - level;
        if (fa <= 0.0) out.push_back(a);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) out.push_back(lerp(a, b, fa / (fa - fb)));
    }
    return out;
}

std::vector<Point> clean_polygon(const std::vector<Point>& v, double tol) {
    std::vector<Point> out;
    for (const Point& p : v)
        if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
    while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
    // Drop vertices collinear with their neighbours.
    bool changed = true;
    while (changed && out.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Point& a = out[(i + out.size() - 1) % out.size()];
            const Point& b = out[i];
            const Point& c = out[(i + 1) % out.size()];
            if (orient2d_sign(a, b, c) <= 0) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------------ public

const std::vector<detail::TriangleRuleNode>& detail::triangle_rule(int degree) {
    if (degree == 7) return degree7();
    if (degree == 5) return degree5();
    fail(ErrorCode::InvalidArgument, "triangle rules exist for degree 5 and 7");
}

std::string vertex_flag_name(VertexFlag f) {
    switch (f) {
        case VertexFlag::Interior: return "Interior";
        case VertexFlag::BoundarySmooth: return "BoundarySmooth";
        case VertexFlag::BoundaryCorner: return "BoundaryCorner";
        case VertexFlag::BoundaryFlatEdge: return "BoundaryFlatEdge";
    }
    return "Interior";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Converged: return "Converged";
        case Verdict::Divergent: return "Divergent";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::string to_json(const AreaResult& r) {
    nlohmann::ordered_json j;
    j["value"] = std::isfinite(r.value) ? nlohmann::ordered_json(r.value) : nlohmann::ordered_json();
    j["error"] = r.error;
    j["verdict"] = verdict_name(r.verdict);
    j["cells"] = r.cells;
    return j.dump();
}

double quadrature_density(const ConvexBody& body, const Point& p, double rel_tol, double* rel_err) {
    if (rel_err) *rel_err = 0.0;
    if (body.is_polygon()) return kPi / unit_ball(body, p).area();
    if (const auto* e = body.as_ellipse()) {
        // Affine image of the Klein disk, where the density is (1 - |w|^2)^{-3/2}.
        const Vector w = e->to_unit_disk(p);
        const double r = w.norm();
        const double gap = (1.0 - r) * (1.0 + r);
        if (!(gap > 0.0)) fail(ErrorCode::PointNotInterior, "point is not interior");
        return 1.0 / (gap * std::sqrt(gap) * e->semi_major() * e->semi_minor());
    }
    if (!is_finite(p)) fail(ErrorCode::PointNotInterior, "point is not finite");
    const BallArea a = smooth_ball_area_adaptive(body, p, rel_tol);
    if (rel_err) *rel_err = a.error / a.value;
    return kPi / a.value;
}

IdealTriangle make_ideal_triangle(const ConvexBody& body, const Point& a, const Point& b,
                                  const Point& c) {
    IdealTriangle t{{a, b, c}, {}};
    if (!is_finite(a) || !is_finite(b) || !is_finite(c))
        fail(ErrorCode::TriangleNotInside, "triangle vertices must be finite");
    if (orient2d_sign(a, b, c) == 0) fail(ErrorCode::DegenerateTriangle, "triangle vertices are collinear");
    for (std::size_t i = 0; i < 3; ++i) {
        const Location loc = locate(body, t.vertices[i]);
        if (loc == Location::Exterior) fail(ErrorCode::TriangleNotInside, "triangle vertex is outside the body");
        if (loc == Location::Interior) {
            t.flags[i] = VertexFlag::Interior;
            continue;
        }
        const BoundaryFeature f = classify_boundary_point(body, t.vertices[i]);
        t.flags[i] = f.kind == BoundaryKind::Corner     ? VertexFlag::BoundaryCorner
                     : f.kind == BoundaryKind::FlatEdge ? VertexFlag::BoundaryFlatEdge
                                                        : VertexFlag::BoundarySmooth;
    }
    constexpr int kGrid = 16;
    for (int i = 1; i < kGrid; ++i)
        for (int j = 1; i + j < kGrid; ++j) {
            const double u = static_cast<double>(i) / kGrid;
            const double v = static_cast<double>(j) / kGrid;
            const Point x = a + (b - a) * u + (c - a) * v;
            if (locate(body, x) == Location::Exterior)
                fail(ErrorCode::TriangleNotInside, "triangle leaves the body");
        }
    return t;
}

AreaResult region_area(const ConvexBody& body, const std::vector<Point>& region,
                       const QuadratureOptions& opts) {
    validate(opts);
    if (region.size() < 3) fail(ErrorCode::RegionNotInside, "region needs at least three vertices");
    for (const Point& v : region)
        if (!is_finite(v) || contains(body, v) != Location::Interior)
            fail(ErrorCode::RegionNotInside, "region vertices must be interior points");
    Polygon poly{region};  // validates convexity
    const DensityField h(body, opts.rel_tol);
    Cubature cub({[&h](double x, double y) { return h(Point{x, y}); }}, opts);
    const Point g = poly.centroid();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly.vertex(i);
        const Point& q = poly.vertex(i + 1);
        cub.add_triangle(0, {g.x, g.y}, {p.x, p.y}, {q.x, q.y});
    }
    return finish(cub.run(), h);
}

AreaResult ideal_triangle_area(const ConvexBody& body, const IdealTriangle& tri,
                               const QuadratureOptions& opts) {
    validate(opts);
    const auto& v = tri.vertices;
    if (orient2d_sign(v[0], v[1], v[2]) == 0)
        fail(ErrorCode::DegenerateTriangle, "triangle vertices are collinear");
    for (const Point& p : v)
        if (locate(body, p) == Location::Exterior)
            fail(ErrorCode::TriangleNotInside, "triangle vertex is outside the body");
    const DensityField h(body, opts.rel_tol);

    // A side inside the boundary: sub-region next to its middle half, seen
    // from the opposite vertex.
    for (std::size_t i = 0; i < 3; ++i) {
        const Point& a = v[(i + 1) % 3];
        const Point& b = v[(i + 2) % 3];
        if (!on_boundary(body, midpoint(a, b))) continue;
        const Point& c = v[i];
        const Integrand f = flat_patch(h, c, lerp(a, b, 0.25), lerp(a, b, 0.75));
        const auto slab = [&](double x0, double x1) { return integrate_rectangle(f, 0.0, 1.0, x0, x1, opts); };
        AreaResult r = divergence_analysis(slab, std::log(2.0), 0.0, 0.0, 0, opts);
        return r.verdict == Verdict::Divergent ? r : finish(r, h);
    }
    // A corner vertex: the corner triangle cut off by the midline.
    for (std::size_t i = 0; i < 3; ++i) {
        if (tri.flags[i] != VertexFlag::BoundaryCorner) continue;
        const Point& a = v[i];
        const Point m0 = midpoint(a, v[(i + 1) % 3]);
        const Point m1 = midpoint(a, v[(i + 2) % 3]);
        const Integrand f = corner_patch(h, a, m0, m1);
        const auto slab = [&](double x0, double x1) { return integrate_rectangle(f, 0.0, 1.0, x0, x1, opts); };
        AreaResult r = divergence_analysis(slab, 0.0, 0.0, 0.0, 0, opts);
        return r.verdict == Verdict::Divergent ? r : finish(r, h);
    }

    // Integrable case: six vertex patches around the centroid.
    const Point g = Point{(v[0].x + v[1].x + v[2].x) / 3.0, (v[0].y + v[1].y + v[2].y) / 3.0};
    std::vector<Integrand> patches;
    for (std::size_t i = 0; i < 3; ++i) {
        const Point& a = v[i];
        patches.push_back(power_patch(h, body, a, midpoint(a, v[(i + 1) % 3]), g));
        patches.push_back(power_patch(h, body, a, midpoint(a, v[(i + 2) % 3]), g));
    }
    Cubature cub(patches, opts);
    for (std::size_t k = 0; k < patches.size(); ++k) cub.add_rectangle(k, 0.0, 1.0, 0.0, 1.0);
    return finish(cub.run(), h);
}

namespace {

ProbeResult run_probe(const Integrand& f, const std::vector<double>& levels_t,
                      const std::function<double(double)>& xi_of_t, double xi_floor,
                      const QuadratureOptions& opts, const DensityField& h) {
    ProbeResult out;
    out.truncations = levels_t;
    double area = 0.0, error = 0.0;
    double xi_prev = xi_floor;
    std::size_t cells = 0;
    bool converged = true;
    for (double t : levels_t) {
        if (!(t > 0.0 && t < 1.0)) fail(ErrorCode::OutOfRange, "truncation parameters must lie in (0, 1)");
        const double xi = xi_of_t(t);
        if (xi > xi_prev) {
            AreaResult d = finish(integrate_rectangle(f, 0.0, 1.0, xi_prev, xi, opts), h);
            area += d.value;
            error += d.error;
            cells += d.cells;
            if (d.verdict != Verdict::Converged) converged = false;
            xi_prev = xi;
        }
        AreaResult r;
        r.value = area;
        r.error = error;
        r.cells = cells;
        r.verdict = converged ? Verdict::Converged : Verdict::Inconclusive;
        out.areas.push_back(r);
    }
    const auto slab = [&](double x0, double x1) { return integrate_rectangle(f, 0.0, 1.0, x0, x1, opts); };
    out.tail = divergence_analysis(slab, xi_prev, area, error, cells, opts);
    out.verdict = out.tail.verdict;
    return out;
}

}  // namespace

ProbeResult corner_divergence_probe(const ConvexBody& body, const Point& omega, const Point& p,
                                    const Point& q, const std::vector<double>& truncations,
                                    const QuadratureOptions& opts) {
    validate(opts);
    const BoundaryFeature f = classify_boundary_point(body, omega);
    if (f.kind == BoundaryKind::Smooth)
        fail(ErrorCode::NotACornerOrFlat, "omega must be a corner or lie on a flat edge");
    if (contains(body, p) != Location::Interior || contains(body, q) != Location::Interior)
        fail(ErrorCode::PointNotInterior, "p and q must be interior");
    if (orient2d_sign(omega, p, q) == 0) fail(ErrorCode::DegenerateTriangle, "omega, p, q are collinear");
    std::vector<double> sorted = truncations;
    std::sort(sorted.begin(), sorted.end());
    const DensityField h(body, opts.rel_tol);
    const Integrand integrand = corner_patch(h, omega, p, q);
    // Truncation t keeps lambda >= 1 - t, i.e. xi <= -log(1 - t).
    return run_probe(integrand, sorted, [](double t) { return -std::log1p(-t); }, 0.0, opts, h);
}

ProbeResult flat_divergence_probe(const ConvexBody& body, const Point& p, const Point& a,
                                  const Point& b, double s, const std::vector<double>& truncations,
                                  const QuadratureOptions& opts) {
    validate(opts);
    if (!(s > 0.0 && s < 1.0)) fail(ErrorCode::OutOfRange, "s must lie in (0, 1)");
    if (contains(body, p) != Location::Interior) fail(ErrorCode::PointNotInterior, "p must be interior");
    if (a == b || !on_boundary(body, a) || !on_boundary(body, b) || !on_boundary(body, midpoint(a, b)))
        fail(ErrorCode::NotACornerOrFlat, "]a, b[ must be a segment of the boundary");
    std::vector<double> sorted = truncations;
    std::sort(sorted.begin(), sorted.end());
    const DensityField h(body, opts.rel_tol);
    const Integrand integrand = flat_patch(h, p, a, b);
    const double xi_s = -std::log1p(-s);
    return run_probe(integrand, sorted,
                     [xi_s](double t) { return std::max(xi_s, -std::log1p(-t)); }, xi_s, opts, h);
}

std::vector<Point> inner_parallel_polygon(const ConvexBody& body, double delta) {
    const double diam = body.diameter();
    if (!(delta >= 1e-6 * diam)) fail(ErrorCode::InvalidArgument, "delta below 1e-6 diameter");
    const Point c = body.interior_point();
    std::vector<Point> poly{c + Vector{-2 * diam, -2 * diam}, c + Vector{2 * diam, -2 * diam},
                            c + Vector{2 * diam, 2 * diam}, c + Vector{-2 * diam, 2 * diam}};
    if (const auto* pg = body.as_polygon()) {
        for (std::size_t i = 0; i < pg->size() && !poly.empty(); ++i)
            poly = clip(poly, pg->normal(i), dot(pg->normal(i), pg->vertex(i).as_vector()) - delta);
    } else {
        constexpr std::size_t kNormals = 1024;
        for (std::size_t j = 0; j < kNormals && !poly.empty(); ++j) {
            const double theta = 2.0 * kPi * static_cast<double>(j) / kNormals;
            poly = clip(poly, direction(theta), support_function(body, theta) - delta);
        }
    }
    poly = clean_polygon(poly, 1e-12 * diam);
    if (poly.size() < 3) fail(ErrorCode::DeltaTooLarge, "inner parallel body is empty");
    double area2 = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) area2 += cross(poly[i].as_vector(), poly[(i + 1) % poly.size()].as_vector());
    if (!(area2 > 1e-14 * diam * diam)) fail(ErrorCode::DeltaTooLarge, "inner parallel body is empty");
    return poly;
}

AreaResult compact_core_area(const ConvexBody& body, double delta, const QuadratureOptions& opts) {
    validate(opts);
    const std::vector<Point> poly = inner_parallel_polygon(body, delta);
    if (body.is_polygon()) return region_area(body, poly, opts);

    // Smooth bodies: normal coordinates x = b(theta) - s n(theta) for the
    // layer delta <= s <= s1 (injective while s < min rho) and a star-shaped
    // patch around an interior point for K_{s1}.
    const Point c = body.interior_point();
    double rho_min = kInf, h_min = kInf;
    constexpr std::size_t kScan = 2048;
    for (std::size_t j = 0; j < kScan; ++j) {
        const double theta = 2.0 * kPi * static_cast<double>(j) / kScan;
        rho_min = std::min(rho_min, curvature_radius(body, theta));
        h_min = std::min(h_min, support_function(body, theta) - dot(direction(theta), c.as_vector()));
    }
    if (!(delta < rho_min && delta < h_min))
        fail(ErrorCode::DeltaTooLarge, "delta must be below the minimal curvature radius and the inradius");
    const double s1 = std::max(delta, 0.5 * std::min(rho_min, h_min));

    const DensityField h(body, opts.rel_tol);
    const double two_pi = 2.0 * kPi;
    const auto offset = [&body](double theta, double s) {
        return boundary_point_at_normal(body, theta) - direction(theta) * s;
    };
    std::vector<Integrand> patches;
    // Star patch: c + r (y(theta) - c), Jacobian r (y - c) x y'.
    patches.push_back([&, s1](double theta, double r) {
        const Point y = offset(theta, s1);
        const Vector yp = perp(direction(theta)) * (curvature_radius(body, theta) - s1);
        return h(c + (y - c) * r) * r * cross(y - c, yp);
    });
    Cubature cub(patches, opts);
    cub.add_rectangle(0, 0.0, two_pi, 0.0, 1.0);
    if (s1 > delta) {
        // Layer with s = s1 exp(-eta); Jacobian (rho - s) s.
        const double eta_max = std::log(s1 / delta);
        Cubature layer({[&, s1](double theta, double eta) {
                           const double s = s1 * std::exp(-eta);
                           return h(offset(theta, s)) * (curvature_radius(body, theta) - s) * s;
                       }},
                       opts);
        constexpr int kStrips = 8;
        for (int k = 0; k < kStrips; ++k)
            layer.add_rectangle(0, two_pi * k / kStrips, two_pi * (k + 1) / kStrips, 0.0, eta_max);
        const AreaResult core = cub.run();
        const AreaResult band = layer.run();
        AreaResult out;
        out.value = core.value + band.value;
        out.error = core.error + band.error;
        out.cells = core.cells + band.cells;
        out.verdict = (core.verdict == Verdict::Converged && band.verdict == Verdict::Converged)
                          ? Verdict::Converged
                          : Verdict::Inconclusive;
        return finish(out, h);
    }
    return finish(cub.run(), h);
}

}  // namespace hilbert
