#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "hilbert/convex_body.hpp"
#include "hilbert/measure_quadrature.hpp"

namespace hilbert {

/// Seeded source of uniform doubles: mt19937_64, with u = (x >> 11) * 2^-53
/// so that sequences do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform in {0, ..., n - 1}, n > 0.
    std::size_t index(std::size_t n) {
        return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
    }

private:
    std::mt19937_64 engine_;
};

/// Boundary point at t in [0, 1) (taken mod 1): arc-length fraction for
/// polygons, parameter angle 2 pi t for ellipses, normal angle 2 pi t for
/// support bodies.
Point boundary_point_at_parameter(const ConvexBody& body, double t);

/// boundary_point_at_parameter at a uniform t.
Point random_boundary_point(const ConvexBody& body, Rng& rng);

/// Rejection sampling in the bounding box, keeping points at Euclidean
/// distance >= margin * diameter from the boundary.
Point random_interior_point(const ConvexBody& body, Rng& rng, double margin = 1e-4);

/// Three random boundary points forming a non-degenerate ideal triangle.
IdealTriangle random_ideal_triangle(const ConvexBody& body, Rng& rng);

/// Convex polygon with n vertices at sorted random angles and radii in
/// [0.6, 1], each angular gap below pi / 2 so the origin is interior.
Polygon random_convex_polygon(Rng& rng, std::size_t n);

}  // namespace hilbert
