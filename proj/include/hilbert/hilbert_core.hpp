#pragma once

#include <cstddef>
#include <vector>

#include "hilbert/convex_body.hpp"

namespace hilbert {

enum class BallExactness { Exact, Sampled };

/// Finsler unit ball at a point, as a centrally symmetric convex polygon in
/// the tangent plane.
struct UnitBallPolygon {
    std::vector<Vector> vertices;  // counterclockwise
    BallExactness exactness{BallExactness::Exact};
    std::size_t n_directions{0};

    double area() const;
    /// Number of genuine corners, ignoring vertices whose neighbours are
    /// collinear with them to relative tolerance `tol`.
    std::size_t corner_count(double tol = 1e-9) const;
    bool is_centrally_symmetric(double tol) const;
    bool is_convex() const;
};

struct BallArea {
    double value;
    double error;
};

inline constexpr std::size_t kDefaultBallDirections = 256;

/// Hilbert distance, half the log of the cross-ratio along the chord.
double hilbert_distance(const ConvexBody& body, const Point& p, const Point& q);
/// Finsler norm F(p, v); zero for v = 0.
double finsler_norm(const ConvexBody& body, const Point& p, const Vector& v);
/// Closed form for polygons: F = (max_i l_i(v) + max_i -l_i(v)) / 2 with
/// l_i(v) = n_i . v / dist(p, edge line i). Independent of chord_endpoints.
double polygon_finsler_norm(const Polygon& poly, const Point& p, const Vector& v);

/// Exact for polygons; for smooth bodies an inscribed polygon over
/// n_directions uniform directions (even, >= 16).
UnitBallPolygon unit_ball(const ConvexBody& body, const Point& p,
                          std::size_t n_directions = kDefaultBallDirections);
/// Exact shoelace area for polygons; Richardson-extrapolated sampled area
/// otherwise.
BallArea ball_area(const ConvexBody& body, const Point& p,
                   std::size_t n_directions = kDefaultBallDirections);
/// Hilbert-area density pi / vol(B(p)).
double density(const ConvexBody& body, const Point& p);

/// Ball area of a smooth body by the polar formula
/// integral over [0, pi) of F(p, M w(phi))^-2 |det M| dphi, with M an affine
/// preconditioner that rounds the ball, evaluated by the trapezoid rule.
BallArea smooth_ball_area_polar(const ConvexBody& body, const Point& p,
                                std::size_t n_directions = 64);
/// Same formula with node doubling from 16 until two successive estimates
/// agree to rel_tol or max_directions is reached. No clearance guard: the
/// accuracy near the boundary is limited only by the exit computation.
/// The caller guarantees p is interior.
BallArea smooth_ball_area_adaptive(const ConvexBody& body, const Point& p, double rel_tol,
                                   std::size_t max_directions = 512);

}  // namespace hilbert
