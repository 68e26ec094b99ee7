#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "hilbert/errors.hpp"
#include "hilbert/geometry.hpp"

namespace hilbert {

/// x -> linear * x + offset.
struct AffineMap {
    double a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};
    Vector offset{};

    static AffineMap identity() { return {}; }
    static AffineMap scaling(double sx, double sy) { return {sx, 0.0, 0.0, sy, {}}; }
    static AffineMap rotation(double angle);
    static AffineMap translation(const Vector& t) { return {1.0, 0.0, 0.0, 1.0, t}; }
    /// The unique map sending (p0, p1, p2) to (q0, q1, q2). Throws SingularMap
    /// when the source points are collinear.
    static AffineMap from_triangles(const std::array<Point, 3>& source,
                                    const std::array<Point, 3>& target);

    Point apply(const Point& p) const {
        return {a11 * p.x + a12 * p.y + offset.dx, a21 * p.x + a22 * p.y + offset.dy};
    }
    Vector apply_linear(const Vector& v) const {
        return {a11 * v.dx + a12 * v.dy, a21 * v.dx + a22 * v.dy};
    }
    /// Transpose of the linear part applied to v.
    Vector apply_transpose(const Vector& v) const {
        return {a11 * v.dx + a21 * v.dy, a12 * v.dx + a22 * v.dy};
    }
    double determinant() const { return a11 * a22 - a12 * a21; }
    AffineMap inverse() const;
    /// (*this) after `first`.
    AffineMap compose(const AffineMap& first) const;
};

/// Projective map of the plane in homogeneous coordinates (x, y, 1).
struct Homography {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static Homography identity() { return {}; }
    static Homography from_affine(const AffineMap& a);
    /// Sends the line {x : dot(normal, x) = level} to infinity; points with
    /// dot(normal, x) < level keep a positive homogeneous weight.
    static Homography line_to_infinity(const Vector& normal, double level);

    /// Homogeneous weight of the image of p; the image is finite iff nonzero.
    double weight(const Point& p) const { return m[2][0] * p.x + m[2][1] * p.y + m[2][2]; }
    Point apply(const Point& p) const;
    Homography inverse() const;
    Homography compose(const Homography& first) const;
};

enum class Location { Interior, Boundary, Exterior };

/// Strictly convex polygon with counterclockwise vertices.
class Polygon {
public:
    /// Validates and stores the vertices. Clockwise input is reversed; input
    /// with fewer than three vertices, a collinear triple, zero area or a
    /// self-intersecting turn sequence is rejected with InvalidBody.
    explicit Polygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    /// Outward unit normal of the edge from vertex(i) to vertex(i + 1).
    const Vector& normal(std::size_t i) const { return normals_[i]; }
    /// Signed distance from p to the line of edge i, positive inside.
    double edge_distance(std::size_t i, const Point& p) const {
        return dot(normals_[i], vertices_[i] - p);
    }
    double area() const;
    Point centroid() const;

private:
    std::vector<Point> vertices_;
    std::vector<Vector> normals_;
};

class Ellipse {
public:
    Ellipse(Point center, double semi_major, double semi_minor, double rotation = 0.0);

    const Point& center() const { return center_; }
    double semi_major() const { return a_; }
    double semi_minor() const { return b_; }
    double rotation() const { return rotation_; }
    double area() const { return kPi * a_ * b_; }

    /// Coordinates of p in the frame where the ellipse is the unit disk.
    Vector to_unit_disk(const Point& p) const;
    Point from_unit_disk(const Vector& u) const;
    /// Support function at outward normal angle theta.
    double support(double theta) const;
    Point boundary_point_at_normal(double theta) const;
    /// Radius of curvature at the boundary point with outward normal angle theta.
    double curvature_radius(double theta) const;

private:
    Point center_;
    double a_;
    double b_;
    double rotation_;
};

/// Body described by its support function h(theta), stored as uniform samples
/// with trigonometric interpolation. The origin is interior (h > 0).
class SupportBody {
public:
    /// Samples h(2*pi*j/N), j = 0..N-1. Fewer than kMinSamples samples are
    /// upsampled by trigonometric interpolation. Rejects bodies with
    /// min(h + h'') <= 10 * eps_geom or min(h) <= 0.
    explicit SupportBody(std::vector<double> samples);

    static SupportBody from_function(const std::function<double(double)>& h,
                                     std::size_t n_samples = kMinSamples);

    static constexpr std::size_t kMinSamples = 512;

    const std::vector<double>& samples() const { return samples_; }

    double h(double theta) const;
    double h_prime(double theta) const;
    double h_second(double theta) const;
    double curvature_radius(double theta) const { return h(theta) + h_second(theta); }
    Point boundary_point_at_normal(double theta) const;

    /// Boundary point hit by the ray p + s v, s > 0, from an interior point p.
    Point ray_exit(const Point& p, const Vector& v) const;
    double diameter() const { return diameter_; }
    /// Area enclosed, 0.5 * integral of h (h + h'').
    double area() const;

private:
    struct Harmonics {
        double h, h1, h2;
        double cos_theta, sin_theta;
    };
    Harmonics evaluate(double theta) const;
    void build_table();

    std::vector<double> samples_;
    std::vector<double> cos_coef_;
    std::vector<double> sin_coef_;
    // Boundary points on a uniform normal-angle grid, used for bracketing.
    std::vector<Point> nodes_;
    double diameter_{0.0};
};

/// A bounded open convex planar domain.
class ConvexBody {
public:
    using Representation = std::variant<Polygon, Ellipse, SupportBody>;

    ConvexBody(Polygon p);
    ConvexBody(Ellipse e);
    ConvexBody(SupportBody s);

    const Representation& representation() const { return rep_; }
    const Polygon* as_polygon() const { return std::get_if<Polygon>(&rep_); }
    const Ellipse* as_ellipse() const { return std::get_if<Ellipse>(&rep_); }
    const SupportBody* as_support() const { return std::get_if<SupportBody>(&rep_); }
    bool is_polygon() const { return as_polygon() != nullptr; }
    /// True for representations with a C2 boundary of positive curvature.
    bool is_smooth() const { return !is_polygon(); }

    double diameter() const { return diameter_; }
    /// Boundary classification tolerance, 1e-9 * diameter.
    double eps_geom() const { return 1e-9 * diameter_; }
    double area() const;
    /// A canonical interior point (centroid for polygons, center for ellipses,
    /// origin for support bodies).
    Point interior_point() const;

private:
    Representation rep_;
    double diameter_{0.0};
};

ConvexBody make_square(double half_side = 1.0);
ConvexBody make_standard_triangle();  // vertices (0,0), (1,0), (0,1)
ConvexBody make_regular_polygon(std::size_t n, double circumradius = 1.0, double phase = 0.0);
ConvexBody make_disk(double radius = 1.0, Point center = {});

struct Chord {
    Point p_minus;
    Point p_plus;
};

/// Support lines at a boundary point, given by the arc of outward unit
/// normals from `normal_first` counterclockwise to `normal_last`.
struct SupportCone {
    Point at;
    Vector normal_first;
    Vector normal_last;

    bool is_single() const { return normal_first == normal_last; }
    /// Normal of the angular-bisector support line.
    Vector bisector() const { return unit(normal_first + normal_last); }
};

enum class BoundaryKind { Smooth, Corner, FlatEdge };

struct BoundaryFeature {
    BoundaryKind kind;
    /// Polygon vertex index (Corner) or edge index (FlatEdge).
    std::size_t index{0};
    /// Outward normal angle for smooth boundaries.
    double normal_angle{0.0};
};

struct RollingRadii {
    double r;
    double R;
};

Location contains(const ConvexBody& body, const Point& p);
Chord chord_endpoints(const ConvexBody& body, const Point& p, const Vector& v);
/// Parameter s > 0 with p + s v on the boundary. p must be interior and v
/// nonzero; neither is checked.
double exit_parameter(const ConvexBody& body, const Point& p, const Vector& v);
/// Throws NotOnBoundary when b is farther than eps_geom from the boundary.
BoundaryFeature classify_boundary_point(const ConvexBody& body, const Point& b);
SupportCone support_lines_at(const ConvexBody& body, const Point& b);
double curvature_radius(const ConvexBody& body, double normal_angle);
RollingRadii rolling_radii(const ConvexBody& body);
ConvexBody apply_affine(const ConvexBody& body, const AffineMap& map);
Point apply_affine(const Point& p, const AffineMap& map);
ConvexBody apply_homography(const ConvexBody& body, const Homography& map);

/// Support function h(theta) = max over the closure of dot(x, (cos, sin)).
double support_function(const ConvexBody& body, double theta);
/// Boundary point whose outward normal has angle theta (smooth bodies only).
Point boundary_point_at_normal(const ConvexBody& body, double theta);
/// Euclidean distance from an interior point to the boundary.
double boundary_distance(const ConvexBody& body, const Point& p);
/// n points along the boundary (polygon vertices are always included).
std::vector<Point> sample_boundary(const ConvexBody& body, std::size_t n);

/// [a, p, q, b] = (|q - a| / |p - a|) * (|p - b| / |q - b|).
double cross_ratio(const Point& a, const Point& p, const Point& q, const Point& b);

/// Minimum of f over a periodic parameter: dense grid then golden-section
/// refinement. Returns (argmin, min).
std::pair<double, double> periodic_minimize(const std::function<double(double)>& f,
                                            std::size_t grid = 2048);

}  // namespace hilbert
