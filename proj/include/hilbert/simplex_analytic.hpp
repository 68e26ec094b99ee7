#pragma once

#include <array>
#include <utility>

#include "hilbert/convex_body.hpp"

namespace hilbert {

/// Ideal triangle vertices on the sides of a triangle m p q:
/// a = (1 - lambda) m + lambda p, b = (1 - mu) p + mu q, c = (1 - nu) q + nu m.
struct BarycentricSpec {
    double lambda;
    double mu;
    double nu;
};

/// alpha = lambda mu nu / ((1 - lambda)(1 - mu)(1 - nu) + lambda mu nu), folded
/// into (0, 1/2] by the complement swap.
double canonical_alpha(const BarycentricSpec& spec);

/// Vertices a(alpha) = (alpha, 1 - alpha), b(alpha) = (0, 1 - alpha),
/// c(alpha) = (alpha, 0) of the canonical ideal triangle T(alpha) of the
/// standard triangle (0,0), (1,0), (0,1).
std::array<Point, 3> canonical_triangle(double alpha);

/// Projective normalization of a triangle domain with an ideal triangle.
struct CanonicalMap {
    Homography map;  // sends the domain m p q onto the standard triangle
    double alpha;
    /// True when the complement swap was applied; then b and c trade places:
    /// map(a) = a(alpha), map(b) = c(alpha), map(c) = b(alpha).
    bool swapped;
};

/// Throws DegenerateTriangle for collinear m, p, q.
CanonicalMap canonical_map(const std::array<Point, 3>& mpq, const BarycentricSpec& spec);

/// Hilbert-area density of the standard triangle, pi / (12 x y (1 - x - y)).
double triangle_density(const Point& p);

/// Li2(x) for x in [-1, 1].
double dilog(double x);

/// F(t) = (12 / pi) A(alpha) with t = (1 - 2 alpha) / alpha, in dilogarithms.
double f_closed(double t);
/// dF/dt = ln(1 + t) / (1 + t).
double f_prime(double t);
/// 4 / (1 + t) ln((1 + t)^2 / ((1 + t)^2 - 1)), a commonly quoted form of the
/// derivative. Positive, but not equal to dF/dt. Kept for comparison only.
double f_prime_printed(double t);

/// Hilbert area of T(alpha), (pi / 12) F((1 - 2 alpha) / alpha).
double ideal_area_closed(double alpha);

/// (2 (1 - x^2)(1 - y^2), 4 (1 - x^2)(1 - y^2)).
std::pair<double, double> square_ball_bounds(const Point& p);

}  // namespace hilbert
