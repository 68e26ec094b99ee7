#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/measure_quadrature.hpp"

namespace hilbert {

struct EllipseWithContacts {
    Ellipse ellipse;
    std::vector<Point> contacts;  // shared boundary points, counterclockwise
};

/// Maximal-area ellipse inside the body. Exact for polygons (up to solver
/// tolerance); support bodies use their circumscribed 1024-gon and contacts
/// are pushed radially onto the true boundary. An ellipse body is its own
/// John ellipse. Throws SolverDidNotConverge.
EllipseWithContacts john_ellipse(const ConvexBody& body);

/// Minimal-area ellipse containing the body (polygon vertices; 1024 boundary
/// samples for support bodies). Throws SolverDidNotConverge.
EllipseWithContacts loewner_ellipse(const ConvexBody& body);

/// Points on the ellipse boundary at parameters 0, 2pi/3, 4pi/3 (+ phase).
std::array<Point, 3> ellipse_points(const Ellipse& e, double phase = 0.0);

struct Theorem2Witnesses {
    EllipseWithContacts john;
    EllipseWithContacts loewner;
    IdealTriangle inner;  // vertices on John contacts
    AreaResult inner_area;
    IdealTriangle outer;  // vertices on Loewner contacts
    /// Converged with value > pi, or Divergent with its truncation witness.
    AreaResult outer_area;
};

/// Inner triangle of area < pi from the John contacts and an outer triangle
/// from the Loewner contacts whose area exceeds pi or diverges. Throws
/// BodyIsEllipse when both areas equal pi to 1e-3 pi.
Theorem2Witnesses theorem2_witnesses(const ConvexBody& body, const QuadratureOptions& opts = {});

enum class SupportCase { CaseI, CaseII, CaseIII };

const char* support_case_name(SupportCase c);

struct SupportTriangleCase {
    SupportCase kind;
    /// Outward normals of the chosen support lines at the three vertices
    /// (tangent for smooth points, bisector of the normal cone at corners).
    std::array<Vector, 3> normals;
    /// Sends the configuration to a Case I configuration (identity for Case I).
    Homography normalization;
    /// Vertices of the bounding triangle formed by the image support lines.
    std::array<Point, 3> bounding_triangle;
    /// True when the image lines bound a triangle containing the image body
    /// (checked on boundary samples).
    bool verified;
};

/// Classifies the three support lines of an ideal triangle: Case I (they
/// bound a triangle containing the body), Case II (two are parallel) or Case
/// III (they bound a triangle on the far side of one line). For II and III a
/// line parallel to one support line is sent to infinity.
SupportTriangleCase support_triangle_case(const ConvexBody& body, const IdealTriangle& tri);

struct BoundCertificate {
    double r;
    double R;
    double delta;      // r^3 / (4 R^2)
    AreaResult core;   // mu(K_delta)
    long n_cap;        // floor(2R / r)
    double bound;      // 2 pi (n_cap + 1) + core.value
};

/// Uniform upper bound on ideal triangle areas of a smooth strictly convex
/// body, with r = rho_min / 2 and R = rho_max. Throws UnsupportedRepresentation
/// for polygons.
BoundCertificate theorem4_bound(const ConvexBody& body, const QuadratureOptions& opts = {});

struct LemmaB1Result {
    double d_pq;
    double d_pq_prime;
    double slack;          // d_pq - (rho / rho') d_pq'
    bool tangent_case;     // m at the origin
    double d_q_circle;     // distance from q to the larger circle (tangent case)
    double tangent_bound;  // (rho' - rho) / (2 rho rho') |q|^2
    double tangent_slack;
    bool holds;
};

/// Chords through m = (0, my) of the circles of radii rho < rho' tangent to
/// the x-axis at the origin, in direction v. Throws DegenerateDirection for a
/// zero v and OutOfRange unless 0 < rho < rho' and 0 <= my <= rho.
LemmaB1Result lemma_b1_check(double rho, double rho_prime, double my, const Vector& v,
                             double tol = 1e-12);

struct LemmaB2Result {
    double alpha;      // half chord at height h
    double d_cq_prime;
    double slack;      // 0.75 r - d_cq_prime
    bool holds;
};

/// Throws PreconditionViolated when 2 alpha > r, OutOfRange unless 0 <= h <= r.
LemmaB2Result lemma_b2_check(double r, double h, double tol = 1e-12);

struct Lemma12Result {
    Point a_prime;
    double clearance;  // d(a', boundary)
    double bound;      // r / (4 R^2) d(a, b)^2
    double slack;
    bool holds;
};

/// a' = second intersection of the line ab with the circle of radius r
/// tangent inside at a. Throws NoIntersection when a' is not in ]a, b[.
Lemma12Result lemma12_check(const ConvexBody& body, const Point& a, const Point& b,
                            double tol = 1e-12);

struct Lemma13Result {
    std::array<Point, 4> rect;  // a, b, b + r nu, a + r nu
    AreaResult area;
    double cap;  // 2 pi floor(2R / r)
    bool holds;
};

/// Rectangle of base ]a, b[ and height r on the side of the chord with the
/// larger clearance, and its measure (two triangles sharing a diagonal).
/// Throws InvalidArgument for a = b or d(a, b) > r, RectangleNotInside.
Lemma13Result lemma13_rectangle(const ConvexBody& body, const Point& a, const Point& b,
                                const QuadratureOptions& opts = {});

struct Example11Result {
    ConvexBody body;  // octagon with tS inside, inside S
    IdealTriangle triangle;
    AreaResult area;
    /// (pi/2) Argth(1/2) (Argth t - Argth(1/2)): the flat-family bound for
    /// the trapezoid A(1/2, t) inside the triangle.
    double lower_bound;
};

/// The octagon cutting the corners of the square [-1, 1]^2 along x +- y =
/// +-(1 + t), and the triangle on its boundary along the rays to (-1, 1),
/// (1, 1) and (0, -1). Throws OutOfRange unless 1/2 < t < 1.
Example11Result example11_family(double t, const QuadratureOptions& opts = {});

}  // namespace hilbert
