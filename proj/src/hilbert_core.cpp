#include "hilbert/hilbert_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hilbert {

namespace {

void require_interior(const ConvexBody& body, const Point& p) {
    if (!is_finite(p) || contains(body, p) != Location::Interior)
        fail(ErrorCode::PointNotInterior, "point must be strictly interior");
}

double shoelace(const std::vector<Vector>& v) {
    double s = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
    return 0.5 * s;
}

// Linear part of an affine preconditioner.
struct Mat2 {
    double a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};

    Vector apply(const Vector& v) const {
        return {a11 * v.dx + a12 * v.dy, a21 * v.dx + a22 * v.dy};
    }
    double det() const { return a11 * a22 - a12 * a21; }
    Mat2 inverse() const {
        const double d = det();
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
};

// 1 / F(p, u) for a smooth body, with a clearance guard.
class SmoothRadius {
public:
    SmoothRadius(const ConvexBody& body, const Point& p, double guard)
        : body_(body), p_(p), guard_(guard) {}

    double operator()(const Vector& u) const {
        const double forward = exit_parameter(body_, p_, u);
        const double backward = exit_parameter(body_, p_, -u);
        const double len = u.norm();
        if (std::min(forward, backward) * len < guard_)
            fail(ErrorCode::PointNotInterior, "point is too close to the boundary for a sampled ball");
        return 2.0 / (1.0 / forward + 1.0 / backward);
    }

private:
    const ConvexBody& body_;
    Point p_;
    double guard_;
};

// Ball boundary points along directions M w_k, w_k uniform on [0, 2 pi).
std::vector<Vector> sampled_ball(const SmoothRadius& radius, const Mat2& m, std::size_t n) {
    std::vector<Vector> out(n);
    const std::size_t half = n / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const Vector u = m.apply(direction(2.0 * kPi * static_cast<double>(k) /
                                           static_cast<double>(n)));
        out[k] = u * radius(u);
        out[k + half] = -out[k];
    }
    return out;
}

// Affine map M with the ball pulled back by M close to the unit disk. Each pass
// fits the quadratic form Q(w) ~ F(p, M w)^2 from the directions e1, e2,
// e1 + e2, e1 - e2 and sets M <- M Q^{-1/2}. Exact in one pass when the ball
// is an ellipse. The eigenvalue clamp keeps very thin balls from producing an
// indefinite fit; later passes then finish the rounding.
Mat2 quadratic_preconditioner(const SmoothRadius& radius) {
    Mat2 m;
    const auto f2 = [&](const Vector& u) {
        const double r = radius(u);
        return 1.0 / (r * r);
    };
    for (int pass = 0;; ++pass) {
        const Vector c1{m.a11, m.a21};
        const Vector c2{m.a12, m.a22};
        const double a = f2(c1);
        const double c = f2(c2);
        const double b = 0.25 * (f2(c1 + c2) - f2(c1 - c2));
        const double mean = 0.5 * (a + c);
        const double gap = std::hypot(0.5 * (a - c), b);
        const double big = mean + gap;
        const double small = std::max(mean - gap, 1e-8 * big);
        const double scale = 1.0 / std::sqrt(std::sqrt(big * small));
        if (big < 1.5 * small || pass == 5) {
            // Keep the Jacobian near 1 for the final trapezoid sums.
            return m * Mat2{scale, 0.0, 0.0, scale};
        }
        const double psi = 0.5 * std::atan2(2.0 * b, a - c);
        const double cs = std::cos(psi), sn = std::sin(psi);
        const double ib = 1.0 / std::sqrt(big), is = 1.0 / std::sqrt(small);
        const Mat2 inv_sqrt{cs * cs * ib + sn * sn * is, cs * sn * (ib - is),
                            cs * sn * (ib - is), sn * sn * ib + cs * cs * is};
        m = m * inv_sqrt;
    }
    return m;
}

double polar_sum(const SmoothRadius& radius, const Mat2& m, std::size_t n, std::size_t first,
                 std::size_t stride) {
    double sum = 0.0;
    for (std::size_t k = first; k < n; k += stride) {
        const Vector u = m.apply(direction(kPi * static_cast<double>(k) / static_cast<double>(n)));
        const double r = radius(u);
        sum += r * r;
    }
    return sum;
}

}  // namespace

double UnitBallPolygon::area() const { return shoelace(vertices); }

std::size_t UnitBallPolygon::corner_count(double tol) const {
    const std::size_t n = vertices.size();
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vector& a = vertices[(i + n - 1) % n];
        const Vector& b = vertices[i];
        const Vector& c = vertices[(i + 1) % n];
        const double turn = cross(b - a, c - b);
        if (turn > tol * (b - a).norm() * (c - b).norm()) ++count;
    }
    return count;
}

bool UnitBallPolygon::is_centrally_symmetric(double tol) const {
    for (const Vector& v : vertices) {
        const bool found = std::any_of(vertices.begin(), vertices.end(),
                                       [&](const Vector& w) { return (v + w).norm() <= tol; });
        if (!found) return false;
    }
    return true;
}

bool UnitBallPolygon::is_convex() const {
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = Point{} + vertices[(i + n - 1) % n];
        const Point b = Point{} + vertices[i];
        const Point c = Point{} + vertices[(i + 1) % n];
        if (orient2d_sign(a, b, c) < 0) return false;
    }
    return true;
}

double polygon_finsler_norm(const Polygon& poly, const Point& p, const Vector& v) {
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const double l = dot(poly.normal(i), v) / poly.edge_distance(i, p);
        hi = std::max(hi, l);
        lo = std::min(lo, l);
    }
    return 0.5 * (hi - lo);
}

double hilbert_distance(const ConvexBody& body, const Point& p, const Point& q) {
    require_interior(body, p);
    require_interior(body, q);
    const Vector d = q - p;
    const double s = d.norm();
    if (s == 0.0) return 0.0;
    const Vector u = d / s;
    const double forward = exit_parameter(body, p, u);
    const double backward = exit_parameter(body, p, -u);
    // [a, p, q, b] = (1 + s / |p - a|) / (1 - s / |p - b|)
    return 0.5 * (std::log1p(s / backward) - std::log1p(-s / forward));
}

double finsler_norm(const ConvexBody& body, const Point& p, const Vector& v) {
    require_interior(body, p);
    if (!is_finite(v)) fail(ErrorCode::InvalidArgument, "tangent vector is not finite");
    if (v.dx == 0.0 && v.dy == 0.0) return 0.0;
    if (const auto* poly = body.as_polygon()) return polygon_finsler_norm(*poly, p, v);
    return 0.5 * (1.0 / exit_parameter(body, p, v) + 1.0 / exit_parameter(body, p, -v));
}

UnitBallPolygon unit_ball(const ConvexBody& body, const Point& p, std::size_t n_directions) {
    require_interior(body, p);
    UnitBallPolygon ball;
    if (const auto* poly = body.as_polygon()) {
        // F(p, .) is linear on the cones cut out by the directions to the
        // vertices and their opposites.
        std::vector<double> angles;
        angles.reserve(2 * poly->size());
        for (const Point& v : poly->vertices()) {
            const Vector d = v - p;
            const double a = std::atan2(d.dy, d.dx);
            angles.push_back(a);
            angles.push_back(a > 0.0 ? a - kPi : a + kPi);
        }
        std::sort(angles.begin(), angles.end());
        std::vector<double> unique;
        for (double a : angles)
            if (unique.empty() || a - unique.back() > 1e-12) unique.push_back(a);
        if (unique.size() > 1 && unique.front() + 2.0 * kPi - unique.back() <= 1e-12) unique.pop_back();
        for (double a : unique) {
            const Vector u = direction(a);
            ball.vertices.push_back(u / polygon_finsler_norm(*poly, p, u));
        }
        ball.exactness = BallExactness::Exact;
        ball.n_directions = unique.size();
        return ball;
    }
    if (n_directions < 16 || n_directions % 2 != 0)
        fail(ErrorCode::InvalidArgument, "n_directions must be even and at least 16");
    ball.vertices = sampled_ball(SmoothRadius(body, p, 1e-6 * body.diameter()), Mat2{}, n_directions);
    ball.exactness = BallExactness::Sampled;
    ball.n_directions = n_directions;
    return ball;
}

BallArea ball_area(const ConvexBody& body, const Point& p, std::size_t n_directions) {
    if (body.is_polygon()) return {unit_ball(body, p).area(), 0.0};
    require_interior(body, p);
    if (n_directions < 16 || n_directions % 2 != 0)
        fail(ErrorCode::InvalidArgument, "n_directions must be even and at least 16");
    const SmoothRadius radius(body, p, 1e-6 * body.diameter());
    const Mat2 m = quadratic_preconditioner(radius);
    const double coarse = std::fabs(shoelace(sampled_ball(radius, m, n_directions)));
    const double fine = std::fabs(shoelace(sampled_ball(radius, m, 2 * n_directions)));
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    return {extrapolated, std::fabs(extrapolated - fine)};
}

double density(const ConvexBody& body, const Point& p) { return kPi / ball_area(body, p).value; }

BallArea smooth_ball_area_polar(const ConvexBody& body, const Point& p, std::size_t n_directions) {
    if (body.is_polygon())
        fail(ErrorCode::UnsupportedRepresentation, "polar ball area is for smooth bodies");
    require_interior(body, p);
    n_directions = std::max<std::size_t>(8, n_directions + n_directions % 2);
    const SmoothRadius radius(body, p, 0.0);
    const Mat2 m = quadratic_preconditioner(radius);
    const double jac = std::fabs(m.det());
    // r(phi)^2 has period pi; trapezoid on [0, pi) with n and n/2 nodes.
    const double sum_even = polar_sum(radius, m, n_directions, 0, 2);
    const double sum_all = sum_even + polar_sum(radius, m, n_directions, 1, 2);
    const double fine = jac * kPi * sum_all / static_cast<double>(n_directions);
    const double coarse = jac * kPi * sum_even / static_cast<double>(n_directions / 2);
    return {fine, std::fabs(fine - coarse)};
}

BallArea smooth_ball_area_adaptive(const ConvexBody& body, const Point& p, double rel_tol,
                                   std::size_t max_directions) {
    if (body.is_polygon())
        fail(ErrorCode::UnsupportedRepresentation, "polar ball area is for smooth bodies");
    const SmoothRadius radius(body, p, 0.0);
    const Mat2 m = quadratic_preconditioner(radius);
    const double jac = std::fabs(m.det());
    std::size_t n = 16;
    double sum = polar_sum(radius, m, n, 0, 1);
    double value = jac * kPi * sum / static_cast<double>(n);
    for (;;) {
        const std::size_t n2 = 2 * n;
        sum += polar_sum(radius, m, n2, 1, 2);
        const double next = jac * kPi * sum / static_cast<double>(n2);
        const double err = std::fabs(next - value);
        n = n2;
        value = next;
        if (err <= rel_tol * value || n >= max_directions) return {value, err};
    }
}

}  // namespace hilbert
