#include "hilbert/simplex_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hilbert {

namespace {

constexpr double kPiSq = kPi * kPi;

double dilog_series(double x) {
    double term = x;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double add = term / (static_cast<double>(k) * k);
        sum += add;
        if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
        term *= x;
    }
    return sum;
}

// Li2(-t) for t >= 0, using the inversion formula beyond t = 1.
double dilog_negative(double t) {
    if (t <= 1.0) return dilog(-t);
    const double l = std::log(t);
    return -kPiSq / 6.0 - 0.5 * l * l - dilog(-1.0 / t);
}

void check_spec(const BarycentricSpec& s) {
    for (double v : {s.lambda, s.mu, s.nu})
        if (!(v > 0.0 && v < 1.0))
            fail(ErrorCode::InvalidArgument, "barycentric parameters must lie in (0, 1)");
}

double raw_alpha(double l, double m, double n) {
    const double prod = l * m * n;
    return prod / ((1.0 - l) * (1.0 - m) * (1.0 - n) + prod);
}

}  // namespace

double canonical_alpha(const BarycentricSpec& spec) {
    check_spec(spec);
    const double a = raw_alpha(spec.lambda, spec.mu, spec.nu);
    if (a <= 0.5) return a;
    return raw_alpha(1.0 - spec.lambda, 1.0 - spec.mu, 1.0 - spec.nu);
}

std::array<Point, 3> canonical_triangle(double alpha) {
    return {Point{alpha, 1.0 - alpha}, Point{0.0, 1.0 - alpha}, Point{alpha, 0.0}};
}

CanonicalMap canonical_map(const std::array<Point, 3>& mpq, const BarycentricSpec& spec) {
    check_spec(spec);
    if (orient2d_sign(mpq[0], mpq[1], mpq[2]) == 0)
        fail(ErrorCode::DegenerateTriangle, "domain vertices are collinear");

    std::array<Point, 3> tri = mpq;
    double l = spec.lambda, m = spec.mu, n = spec.nu;
    bool swapped = false;
    if (raw_alpha(l, m, n) > 0.5) {
        // Relabel (m, p, q) -> (p, m, q): a keeps its role, b and c trade.
        std::swap(tri[0], tri[1]);
        const double l2 = 1.0 - l, m2 = 1.0 - n, n2 = 1.0 - m;
        l = l2;
        m = m2;
        n = n2;
        swapped = true;
    }
    const double alpha = raw_alpha(l, m, n);

    // Lift to weights (u, v, w) on the vertices; the scale of w is free.
    double w = 1.0;
    double u = (1.0 - l) * (1.0 - m) / (l * m) * w;
    double v = l * n / ((1.0 - l) * (1.0 - n)) * w;
    const double scale = std::max({u, v, w});
    u /= scale;
    v /= scale;
    w /= scale;

    // Barycentric coordinates as affine functions of (x, y).
    const Point& pm = tri[0];
    const Point& pp = tri[1];
    const Point& pq = tri[2];
    const double det = orient2d(pm, pp, pq);
    // beta_m = orient(x, p, q) / det, etc.
    const auto row = [&](const Point& b, const Point& c) {
        // orient(x, b, c) = (b - x) x (c - x) expanded in x.
        return std::array<double, 3>{(b.y - c.y) / det, (c.x - b.x) / det,
                                     (b.x * c.y - b.y * c.x) / det};
    };
    const auto bm = row(pp, pq);
    const auto bp = row(pq, pm);
    const auto bq = row(pm, pp);

    CanonicalMap out;
    out.alpha = alpha;
    out.swapped = swapped;
    for (int j = 0; j < 3; ++j) {
        out.map.m[0][j] = bm[j] / u;
        out.map.m[1][j] = bp[j] / v;
        out.map.m[2][j] = bm[j] / u + bp[j] / v + bq[j] / w;
    }
    return out;
}

double triangle_density(const Point& p) {
    const double z = 1.0 - p.x - p.y;
    if (!(p.x > 0.0 && p.y > 0.0 && z > 0.0))
        fail(ErrorCode::OutsideDomain, "point is not inside the standard triangle");
    return kPi / (12.0 * p.x * p.y * z);
}

double dilog(double x) {
    if (!(x >= -1.0 && x <= 1.0)) fail(ErrorCode::OutOfRange, "dilog argument must be in [-1, 1]");
    if (x == 1.0) return kPiSq / 6.0;
    if (x > 0.5) return kPiSq / 6.0 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
    if (x < -0.5) {
        const double l = std::log1p(-x);
        return -dilog_series(x / (x - 1.0)) - 0.5 * l * l;
    }
    return dilog_series(x);
}

double f_closed(double t) {
    if (!(t >= 0.0)) fail(ErrorCode::NegativeT, "t must be nonnegative");
    if (!std::isfinite(t)) fail(ErrorCode::OutOfRange, "t must be finite");
    if (t == 0.0) return kPiSq / 2.0;
    const double x = 1.0 / (1.0 + t);
    return kPiSq / 3.0 - 2.0 * dilog(-x) - dilog_negative(t) - dilog(x) + dilog(x * x) +
           std::log1p(1.0 / t) * std::log1p(t);
}

double f_prime(double t) {
    if (!(t > 0.0)) fail(ErrorCode::NonpositiveT, "t must be positive");
    return std::log1p(t) / (1.0 + t);
}

double f_prime_printed(double t) {
    if (!(t > 0.0)) fail(ErrorCode::NonpositiveT, "t must be positive");
    const double s = (1.0 + t) * (1.0 + t);
    return 4.0 / (1.0 + t) * std::log(s / (t * (2.0 + t)));
}

double ideal_area_closed(double alpha) {
    if (!(alpha > 0.0 && alpha <= 0.5)) fail(ErrorCode::OutOfRange, "alpha must be in (0, 1/2]");
    if (alpha == 0.5) return kPi * kPiSq / 24.0;
    return kPi / 12.0 * f_closed((1.0 - 2.0 * alpha) / alpha);
}

std::pair<double, double> square_ball_bounds(const Point& p) {
    if (!(std::fabs(p.x) < 1.0 && std::fabs(p.y) < 1.0))
        fail(ErrorCode::OutsideSquare, "point must lie in the open square (-1, 1)^2");
    const double base = (1.0 - p.x * p.x) * (1.0 - p.y * p.y);
    return {2.0 * base, 4.0 * base};
}

}  // namespace hilbert
