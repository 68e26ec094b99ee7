#pragma once

#include <cmath>
#include <numbers>

namespace hilbert {

inline constexpr double kPi = std::numbers::pi;

struct Vector {
    double dx{0.0};
    double dy{0.0};

    constexpr Vector operator+(const Vector& o) const { return {dx + o.dx, dy + o.dy}; }
    constexpr Vector operator-(const Vector& o) const { return {dx - o.dx, dy - o.dy}; }
    constexpr Vector operator-() const { return {-dx, -dy}; }
    constexpr Vector operator*(double s) const { return {dx * s, dy * s}; }
    constexpr Vector operator/(double s) const { return {dx / s, dy / s}; }
    constexpr bool operator==(const Vector&) const = default;

    double norm() const { return std::hypot(dx, dy); }
    constexpr double squared_norm() const { return dx * dx + dy * dy; }
};

constexpr Vector operator*(double s, const Vector& v) { return v * s; }

struct Point {
    double x{0.0};
    double y{0.0};

    constexpr Point operator+(const Vector& v) const { return {x + v.dx, y + v.dy}; }
    constexpr Point operator-(const Vector& v) const { return {x - v.dx, y - v.dy}; }
    constexpr Vector operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    constexpr bool operator==(const Point&) const = default;

    constexpr Vector as_vector() const { return {x, y}; }
};

constexpr double dot(const Vector& a, const Vector& b) { return a.dx * b.dx + a.dy * b.dy; }
constexpr double cross(const Vector& a, const Vector& b) { return a.dx * b.dy - a.dy * b.dx; }
// Counterclockwise quarter turn.
constexpr Vector perp(const Vector& v) { return {-v.dy, v.dx}; }

inline double distance(const Point& a, const Point& b) { return (b - a).norm(); }

inline Vector unit(const Vector& v) { return v / v.norm(); }

inline Vector direction(double angle) { return {std::cos(angle), std::sin(angle)}; }

constexpr Point lerp(const Point& a, const Point& b, double t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

constexpr Point midpoint(const Point& a, const Point& b) { return lerp(a, b, 0.5); }

inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline bool is_finite(const Vector& v) { return std::isfinite(v.dx) && std::isfinite(v.dy); }

/// Sign of the orientation determinant of (a, b, c), evaluated exactly.
///
/// Returns +1 when c lies strictly left of the directed line a->b, -1 when
/// strictly right and 0 when the three points are collinear. The determinant
/// is expanded into products of input coordinates, each split exactly with
/// fma, and the resulting terms are summed as a nonoverlapping expansion, so
/// the sign is correct for every finite double input.
int orient2d_sign(const Point& a, const Point& b, const Point& c);

/// Floating-point orientation determinant (twice the signed triangle area).
constexpr double orient2d(const Point& a, const Point& b, const Point& c) {
    return cross(b - a, c - a);
}

}  // namespace hilbert
