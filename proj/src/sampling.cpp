#include "hilbert/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hilbert/errors.hpp"

namespace hilbert {

Point boundary_point_at_parameter(const ConvexBody& body, double t) {
    t -= std::floor(t);
    if (const auto* poly = body.as_polygon()) {
        const std::size_t k = poly->size();
        std::vector<double> cumulative(k + 1, 0.0);
        for (std::size_t i = 0; i < k; ++i)
            cumulative[i + 1] = cumulative[i] + distance(poly->vertex(i), poly->vertex(i + 1));
        const double s = t * cumulative[k];
        const auto it = std::upper_bound(cumulative.begin() + 1, cumulative.end(), s);
        const auto i = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
            it - cumulative.begin() - 1, static_cast<std::ptrdiff_t>(k) - 1));
        const double len = cumulative[i + 1] - cumulative[i];
        return lerp(poly->vertex(i), poly->vertex(i + 1), (s - cumulative[i]) / len);
    }
    const double theta = 2.0 * kPi * t;
    if (const auto* e = body.as_ellipse()) return e->from_unit_disk(direction(theta));
    return body.as_support()->boundary_point_at_normal(theta);
}

Point random_boundary_point(const ConvexBody& body, Rng& rng) {
    return boundary_point_at_parameter(body, rng.uniform());
}

Point random_interior_point(const ConvexBody& body, Rng& rng, double margin) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const Point& b : sample_boundary(body, 512)) {
        x0 = std::min(x0, b.x);
        x1 = std::max(x1, b.x);
        y0 = std::min(y0, b.y);
        y1 = std::max(y1, b.y);
    }
    const double clearance = margin * body.diameter();
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const Point p{rng.uniform(x0, x1), rng.uniform(y0, y1)};
        if (contains(body, p) == Location::Interior && boundary_distance(body, p) >= clearance) return p;
    }
    fail(ErrorCode::InvalidBody, "no interior point found by rejection sampling");
}

IdealTriangle random_ideal_triangle(const ConvexBody& body, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const Point a = random_boundary_point(body, rng);
        const Point b = random_boundary_point(body, rng);
        const Point c = random_boundary_point(body, rng);
        // Reject near-collinear triples (all three on one edge, or clustered).
        if (std::fabs(orient2d(a, b, c)) < 1e-6 * body.diameter() * body.diameter()) continue;
        try {
            return make_ideal_triangle(body, a, b, c);
        } catch (const HilbertError& e) {
            if (e.code() != ErrorCode::DegenerateTriangle) throw;
        }
    }
    fail(ErrorCode::DegenerateTriangle, "no non-degenerate ideal triangle found");
}

Polygon random_convex_polygon(Rng& rng, std::size_t n) {
    if (n < 3) fail(ErrorCode::InvalidArgument, "need at least 3 vertices");
    for (;;) {
        std::vector<double> angles(n);
        for (double& a : angles) a = rng.uniform(0.0, 2.0 * kPi);
        std::sort(angles.begin(), angles.end());
        bool gaps_ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double next = i + 1 < n ? angles[i + 1] : angles[0] + 2.0 * kPi;
            if (next - angles[i] >= 0.5 * kPi || next - angles[i] < 1e-3) gaps_ok = false;
        }
        if (!gaps_ok) continue;
        std::vector<Point> pts(n);
        for (std::size_t i = 0; i < n; ++i) pts[i] = Point{} + direction(angles[i]) * rng.uniform(0.6, 1.0);
        // Resample unless every vertex is a strict convex corner.
        bool convex = true;
        for (std::size_t i = 0; i < n; ++i)
            if (orient2d(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]) <= 1e-3) convex = false;
        if (convex) return Polygon(pts);
    }
}

}  // namespace hilbert
