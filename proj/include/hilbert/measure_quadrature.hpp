#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hilbert/convex_body.hpp"

namespace hilbert {

enum class VertexFlag { Interior, BoundarySmooth, BoundaryCorner, BoundaryFlatEdge };

std::string vertex_flag_name(VertexFlag f);

struct IdealTriangle {
    std::array<Point, 3> vertices;
    std::array<VertexFlag, 3> flags;
};

/// Classifies each vertex (interior or boundary feature) and checks on a
/// barycentric grid that the open triangle lies in the body.
/// Throws TriangleNotInside (exterior vertex or sample) or DegenerateTriangle.
IdealTriangle make_ideal_triangle(const ConvexBody& body, const Point& a, const Point& b,
                                  const Point& c);

enum class Verdict { Converged, Divergent, Inconclusive };

std::string verdict_name(Verdict v);

struct AreaResult {
    double value{0.0};  // +infinity when Divergent
    double error{0.0};
    Verdict verdict{Verdict::Converged};
    std::size_t cells{0};
    /// Divergent only: truncation levels xi (the log-distance cut-off of the
    /// singular part) and the measure of the truncated region at each level.
    /// Computed levels come first, then the linear continuation up to the
    /// first level whose area exceeds the divergence cap.
    std::vector<double> witness_levels;
    std::vector<double> witness_areas;
    std::size_t witness_computed{0};
};

struct QuadratureOptions {
    double rel_tol{1e-6};
    double abs_tol{1e-9};
    std::size_t max_cells{std::size_t{1} << 20};
    double divergence_cap{1e4};
};

/// {"value", "error", "verdict", "cells"}; value is null when infinite.
std::string to_json(const AreaResult& r);

/// Measure of a convex polygon whose vertices are interior points.
/// Throws RegionNotInside.
AreaResult region_area(const ConvexBody& body, const std::vector<Point>& region,
                       const QuadratureOptions& opts = {});

/// Measure of a triangle whose vertices may lie on the boundary.
/// Smooth and flat-edge vertices are integrable and handled by a vertex
/// substitution; corner vertices and sides lying in the boundary lead to a
/// divergence analysis.
AreaResult ideal_triangle_area(const ConvexBody& body, const IdealTriangle& tri,
                               const QuadratureOptions& opts = {});

struct ProbeResult {
    std::vector<double> truncations;
    std::vector<AreaResult> areas;  // one per truncation, increasing
    /// Asymptotic verdict of the family, with the witness in `tail`.
    Verdict verdict{Verdict::Inconclusive};
    AreaResult tail;
};

/// Truncations of the triangle p omega q near omega:
/// hull(p, q, (1 - t) q + t omega, (1 - t) p + t omega) for t in (0, 1).
/// omega must be a corner or lie on a flat edge (NotACornerOrFlat).
ProbeResult corner_divergence_probe(const ConvexBody& body, const Point& omega, const Point& p,
                                    const Point& q, const std::vector<double>& truncations,
                                    const QuadratureOptions& opts = {});

/// The family A(s, t) = hull(m_a(s), m_b(s), m_a(t), m_b(t)) with
/// m_x(t) = (1 - t) p + t x, where the segment [a, b] lies in the boundary.
/// Truncations t <= s give area 0. Throws NotACornerOrFlat when ]a, b[ is not
/// contained in a flat edge.
ProbeResult flat_divergence_probe(const ConvexBody& body, const Point& p, const Point& a,
                                  const Point& b, double s, const std::vector<double>& truncations,
                                  const QuadratureOptions& opts = {});

/// Inner parallel body {x : d(x, boundary) >= delta}, as the intersection of
/// the inward-shifted support half-planes (1024 normals for smooth bodies,
/// exact for polygons). Throws DeltaTooLarge when it is empty and
/// InvalidArgument when delta < 1e-6 diameter.
std::vector<Point> inner_parallel_polygon(const ConvexBody& body, double delta);

/// mu(K_delta).
AreaResult compact_core_area(const ConvexBody& body, double delta,
                             const QuadratureOptions& opts = {});

/// Hilbert density pi / vol(B(p)) as used by the integrators: exact for
/// polygons, closed form for ellipses, adaptive polar rule for support bodies.
/// `rel_err` receives an estimate of the relative error (0 when exact).
double quadrature_density(const ConvexBody& body, const Point& p, double rel_tol,
                          double* rel_err = nullptr);

namespace detail {

struct TriangleRuleNode {
    double l1, l2, l3;  // barycentric coordinates
    double weight;      // weights sum to 1
};

/// Symmetric cubature rules on a triangle: degree 7 (13 nodes) and degree 5
/// (7 nodes), the embedded pair behind the adaptive integrator.
const std::vector<TriangleRuleNode>& triangle_rule(int degree);

}  // namespace detail

}  // namespace hilbert
