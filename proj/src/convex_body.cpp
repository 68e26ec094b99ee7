#include "hilbert/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hilbert {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr std::size_t kTableSize = 8192;

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

std::size_t wrap_index(long long j, std::size_t m) {
    const long long mm = static_cast<long long>(m);
    long long r = j % mm;
    if (r < 0) r += mm;
    return static_cast<std::size_t>(r);
}

double polygon_diameter(const std::vector<Point>& v) {
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, distance(v[i], v[j]));
    return d;
}

void neumaier_add(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
        comp += (sum - t) + x;
    else
        comp += (x - t) + sum;
    sum = t;
}

// Trigonometric coefficients of uniform samples.
void fourier_coefficients(const std::vector<double>& s, std::vector<double>& a,
                          std::vector<double>& b) {
    const std::size_t n = s.size();
    const std::size_t k_max = n / 2;
    std::vector<double> cos_table(n), sin_table(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double ang = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
        cos_table[m] = std::cos(ang);
        sin_table[m] = std::sin(ang);
    }
    a.assign(k_max + 1, 0.0);
    b.assign(k_max + 1, 0.0);
    double peak = 0.0;
    for (double v : s) peak = std::max(peak, std::fabs(v));
    // Coefficients below the rounding level of the samples are pure noise and
    // would be amplified by k^2 in h''.
    const double floor_level = 1e-15 * peak;
    for (std::size_t k = 0; k <= k_max; ++k) {
        double sc = 0.0, cc = 0.0;
        double ss = 0.0, cs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t m = (k * j) % n;
            neumaier_add(sc, cc, s[j] * cos_table[m]);
            neumaier_add(ss, cs, s[j] * sin_table[m]);
        }
        const bool nyquist = (n % 2 == 0) && k == k_max;
        const double scale = (k == 0 || nyquist) ? 1.0 / static_cast<double>(n)
                                                 : 2.0 / static_cast<double>(n);
        a[k] = (sc + cc) * scale;
        b[k] = nyquist ? 0.0 : (ss + cs) * scale;
        if (k > 0 && std::fabs(a[k]) < floor_level) a[k] = 0.0;
        if (k > 0 && std::fabs(b[k]) < floor_level) b[k] = 0.0;
    }
    while (a.size() > 1 && a.back() == 0.0 && b.back() == 0.0) {
        a.pop_back();
        b.pop_back();
    }
}

double evaluate_series(const std::vector<double>& a, const std::vector<double>& b, double theta) {
    const double c1 = std::cos(theta);
    const double s1 = std::sin(theta);
    double ck = 1.0;
    double sk = 0.0;
    double sum = a[0];
    for (std::size_t k = 1; k < a.size(); ++k) {
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
        sum += a[k] * ck + b[k] * sk;
    }
    return sum;
}

double golden_section(const std::function<double(double)>& f, double lo, double hi, double& fmin) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if (f1 < f2) {
        fmin = f1;
        return x1;
    }
    fmin = f2;
    return x2;
}

void require_finite(const Point& p, const char* what) {
    if (!is_finite(p)) fail(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
}

}  // namespace

// ---------------------------------------------------------------- maps

AffineMap AffineMap::rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, -s, s, c, {}};
}

AffineMap AffineMap::from_triangles(const std::array<Point, 3>& source,
                                    const std::array<Point, 3>& target) {
    if (orient2d_sign(source[0], source[1], source[2]) == 0)
        fail(ErrorCode::SingularMap, "source points are collinear");
    const Vector s1 = source[1] - source[0];
    const Vector s2 = source[2] - source[0];
    const Vector t1 = target[1] - target[0];
    const Vector t2 = target[2] - target[0];
    const double det = cross(s1, s2);
    // L = [t1 t2] * inverse([s1 s2])
    const double i11 = s2.dy / det, i12 = -s2.dx / det;
    const double i21 = -s1.dy / det, i22 = s1.dx / det;
    AffineMap m;
    m.a11 = t1.dx * i11 + t2.dx * i21;
    m.a12 = t1.dx * i12 + t2.dx * i22;
    m.a21 = t1.dy * i11 + t2.dy * i21;
    m.a22 = t1.dy * i12 + t2.dy * i22;
    const Point image = m.apply(source[0]);
    m.offset = m.offset + (target[0] - image);
    return m;
}

AffineMap AffineMap::inverse() const {
    const double det = determinant();
    if (det == 0.0 || !std::isfinite(det)) fail(ErrorCode::SingularMap, "affine map is singular");
    AffineMap inv{a22 / det, -a12 / det, -a21 / det, a11 / det, {}};
    inv.offset = -inv.apply_linear(offset);
    return inv;
}

AffineMap AffineMap::compose(const AffineMap& first) const {
    AffineMap r;
    r.a11 = a11 * first.a11 + a12 * first.a21;
    r.a12 = a11 * first.a12 + a12 * first.a22;
    r.a21 = a21 * first.a11 + a22 * first.a21;
    r.a22 = a21 * first.a12 + a22 * first.a22;
    r.offset = apply_linear(first.offset) + offset;
    return r;
}

Homography Homography::from_affine(const AffineMap& a) {
    Homography h;
    h.m = {{{a.a11, a.a12, a.offset.dx}, {a.a21, a.a22, a.offset.dy}, {0.0, 0.0, 1.0}}};
    return h;
}

Homography Homography::line_to_infinity(const Vector& normal, double level) {
    Homography h;
    h.m = {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {-normal.dx, -normal.dy, level}}};
    return h;
}

Point Homography::apply(const Point& p) const {
    const double w = weight(p);
    if (w == 0.0) fail(ErrorCode::ImageUnbounded, "point is sent to infinity");
    return {(m[0][0] * p.x + m[0][1] * p.y + m[0][2]) / w,
            (m[1][0] * p.x + m[1][1] * p.y + m[1][2]) / w};
}

Homography Homography::inverse() const {
    const auto& a = m;
    Homography r;
    r.m[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    r.m[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
    r.m[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
    r.m[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
    r.m[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    r.m[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
    r.m[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
    r.m[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
    r.m[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    const double det = a[0][0] * r.m[0][0] + a[0][1] * r.m[1][0] + a[0][2] * r.m[2][0];
    if (det == 0.0 || !std::isfinite(det)) fail(ErrorCode::SingularMap, "homography is singular");
    for (auto& row : r.m)
        for (double& x : row) x /= det;
    return r;
}

Homography Homography::compose(const Homography& first) const {
    Homography r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += m[i][k] * first.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

// ---------------------------------------------------------------- polygon

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) fail(ErrorCode::InvalidBody, "polygon needs at least 3 vertices");
    for (const Point& p : vertices_)
        if (!is_finite(p)) fail(ErrorCode::InvalidBody, "polygon vertex is not finite");
    double twice_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % n];
        twice_area += a.x * b.y - a.y * b.x;
    }
    if (!(std::fabs(twice_area) > 0.0)) fail(ErrorCode::InvalidBody, "polygon has zero area");
    if (twice_area < 0.0) std::reverse(vertices_.begin(), vertices_.end());

    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& prev = vertices_[(i + n - 1) % n];
        const Point& cur = vertices_[i];
        const Point& next = vertices_[(i + 1) % n];
        if (orient2d_sign(prev, cur, next) <= 0)
            fail(ErrorCode::InvalidBody,
                 "polygon is not strictly convex at vertex " + std::to_string(i));
        const Vector e0 = cur - prev;
        const Vector e1 = next - cur;
        turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    if (std::fabs(turning - kTwoPi) > 1e-6)
        fail(ErrorCode::InvalidBody, "polygon winds more than once");

    normals_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vector e = vertices_[(i + 1) % n] - vertices_[i];
        normals_.push_back(unit(Vector{e.dy, -e.dx}));
    }
}

double Polygon::area() const {
    double s = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % n];
        s += a.x * b.y - a.y * b.x;
    }
    return 0.5 * s;
}

Point Polygon::centroid() const {
    const std::size_t n = vertices_.size();
    const Point o = vertices_[0];
    double cx = 0.0, cy = 0.0, a = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Vector u = vertices_[i] - o;
        const Vector w = vertices_[i + 1] - o;
        const double t = cross(u, w);
        a += t;
        cx += t * (u.dx + w.dx) / 3.0;
        cy += t * (u.dy + w.dy) / 3.0;
    }
    return {o.x + cx / a, o.y + cy / a};
}

// ---------------------------------------------------------------- ellipse

Ellipse::Ellipse(Point center, double semi_major, double semi_minor, double rotation)
    : center_(center), a_(semi_major), b_(semi_minor), rotation_(rotation) {
    if (!is_finite(center_) || !std::isfinite(a_) || !std::isfinite(b_) ||
        !std::isfinite(rotation_))
        fail(ErrorCode::InvalidBody, "ellipse parameters must be finite");
    if (!(a_ > 0.0) || !(b_ > 0.0)) fail(ErrorCode::InvalidBody, "ellipse axes must be positive");
    if (a_ < b_) {
        std::swap(a_, b_);
        rotation_ += kPi / 2.0;
    }
    rotation_ = std::fmod(rotation_, kPi);
    if (rotation_ < 0.0) rotation_ += kPi;
}

Vector Ellipse::to_unit_disk(const Point& p) const {
    const Vector d = p - center_;
    const double c = std::cos(rotation_);
    const double s = std::sin(rotation_);
    return {(c * d.dx + s * d.dy) / a_, (-s * d.dx + c * d.dy) / b_};
}

Point Ellipse::from_unit_disk(const Vector& u) const {
    const double c = std::cos(rotation_);
    const double s = std::sin(rotation_);
    const double lx = a_ * u.dx;
    const double ly = b_ * u.dy;
    return {center_.x + c * lx - s * ly, center_.y + s * lx + c * ly};
}

double Ellipse::support(double theta) const {
    const double psi = theta - rotation_;
    const double q = std::hypot(a_ * std::cos(psi), b_ * std::sin(psi));
    return dot(center_.as_vector(), direction(theta)) + q;
}

Point Ellipse::boundary_point_at_normal(double theta) const {
    const double psi = theta - rotation_;
    const double cp = std::cos(psi);
    const double sp = std::sin(psi);
    const double q = std::hypot(a_ * cp, b_ * sp);
    return from_unit_disk({a_ * cp / q, b_ * sp / q});
}

double Ellipse::curvature_radius(double theta) const {
    const double psi = theta - rotation_;
    const double q = std::hypot(a_ * std::cos(psi), b_ * std::sin(psi));
    return (a_ * a_) * (b_ * b_) / (q * q * q);
}

// ---------------------------------------------------------------- support body

SupportBody::SupportBody(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 8) fail(ErrorCode::InvalidBody, "support body needs at least 8 samples");
    for (double s : samples_)
        if (!std::isfinite(s)) fail(ErrorCode::InvalidBody, "support sample is not finite");
    fourier_coefficients(samples_, cos_coef_, sin_coef_);
    if (samples_.size() < kMinSamples) {
        // Trigonometric interpolation of the coarse samples.
        std::vector<double> up(kMinSamples);
        for (std::size_t j = 0; j < kMinSamples; ++j)
            up[j] = evaluate_series(cos_coef_, sin_coef_,
                                    kTwoPi * static_cast<double>(j) /
                                        static_cast<double>(kMinSamples));
        samples_ = std::move(up);
        fourier_coefficients(samples_, cos_coef_, sin_coef_);
    }

    const std::size_t n = samples_.size();
    double min_h = std::numeric_limits<double>::infinity();
    for (double s : samples_) min_h = std::min(min_h, s);
    if (!(min_h > 0.0))
        fail(ErrorCode::InvalidBody, "support function must be positive (origin interior)");

    double width = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        width = std::max(width, samples_[j] + h(theta + kPi));
    }
    diameter_ = width;
    const double eps = 1e-9 * diameter_;
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        const double rho = samples_[j] + h_second(theta);
        if (!(rho > 10.0 * eps))
            fail(ErrorCode::InvalidBody,
                 "h + h'' must be positive; fails at sample " + std::to_string(j));
    }
    build_table();
}

SupportBody SupportBody::from_function(const std::function<double(double)>& h,
                                       std::size_t n_samples) {
    n_samples = std::max(n_samples, kMinSamples);
    std::vector<double> s(n_samples);
    for (std::size_t j = 0; j < n_samples; ++j)
        s[j] = h(kTwoPi * static_cast<double>(j) / static_cast<double>(n_samples));
    return SupportBody(std::move(s));
}

SupportBody::Harmonics SupportBody::evaluate(double theta) const {
    const double c1 = std::cos(theta);
    const double s1 = std::sin(theta);
    double ck = 1.0;
    double sk = 0.0;
    Harmonics r{cos_coef_[0], 0.0, 0.0, c1, s1};
    for (std::size_t k = 1; k < cos_coef_.size(); ++k) {
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
        const double kk = static_cast<double>(k);
        const double term = cos_coef_[k] * ck + sin_coef_[k] * sk;
        r.h += term;
        r.h1 += kk * (sin_coef_[k] * ck - cos_coef_[k] * sk);
        r.h2 -= kk * kk * term;
    }
    return r;
}

double SupportBody::h(double theta) const { return evaluate(theta).h; }
double SupportBody::h_prime(double theta) const { return evaluate(theta).h1; }
double SupportBody::h_second(double theta) const { return evaluate(theta).h2; }

Point SupportBody::boundary_point_at_normal(double theta) const {
    const Harmonics v = evaluate(theta);
    const Vector n = direction(theta);
    return Point{} + n * v.h + perp(n) * v.h1;
}

double SupportBody::area() const {
    double s = kPi * cos_coef_[0] * cos_coef_[0];
    for (std::size_t k = 1; k < cos_coef_.size(); ++k) {
        const double kk = static_cast<double>(k);
        const double energy = cos_coef_[k] * cos_coef_[k] + sin_coef_[k] * sin_coef_[k];
        s += 0.5 * kPi * (1.0 - kk * kk) * energy;
    }
    return s;
}

void SupportBody::build_table() {
    nodes_.resize(kTableSize);
    for (std::size_t j = 0; j < kTableSize; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(kTableSize);
        const Harmonics v = evaluate(theta);
        const Vector n = direction(theta);
        const Vector t = perp(n);
        nodes_[j] = Point{} + n * v.h + t * v.h1;
    }
}

Point SupportBody::ray_exit(const Point& p, const Vector& v) const {
    const Vector vhat = unit(v);
    const Vector w = perp(vhat);
    const double theta_v = std::atan2(vhat.dy, vhat.dx);
    if (!is_finite(p) || !is_finite(vhat) || !std::isfinite(theta_v))
        fail(ErrorCode::InvalidArgument, "ray is not finite");
    const double step = kTwoPi / static_cast<double>(kTableSize);

    // Over normal angles in [theta_v - pi/2, theta_v + pi/2] the signed offset
    // g = w.(x(theta) - p) increases (g' = rho v.n); the exit point is its zero.
    struct Sample {
        Point x;
        Vector dx;  // dx/dtheta = rho t
        double g, dg;
    };
    const auto exact = [&](double theta) {
        const Harmonics hv = evaluate(theta);
        const Vector n{hv.cos_theta, hv.sin_theta};
        const Vector t = perp(n);
        Sample out{Point{} + n * hv.h + t * hv.h1, t * (hv.h + hv.h2), 0.0, 0.0};
        out.g = dot(w, out.x - p);
        out.dg = dot(w, out.dx);
        return out;
    };
    const auto node_g = [&](long long j) {
        return dot(w, nodes_[wrap_index(j, kTableSize)] - p);
    };
    const auto not_interior = [] {
        fail(ErrorCode::PointNotInterior, "ray base point is not interior");
    };
    double a = theta_v - kPi / 2.0;
    double b = theta_v + kPi / 2.0;
    long long lo = static_cast<long long>(std::floor(a / step)) + 1;
    long long hi = static_cast<long long>(std::ceil(b / step)) - 1;
    double ga = 0.0, gb = 0.0;
    if (lo > hi || node_g(lo) > 0.0) {
        ga = exact(a).g;
        if (!(ga <= 0.0)) not_interior();
        if (lo <= hi) {
            b = static_cast<double>(lo) * step;
            gb = node_g(lo);
        } else {
            gb = exact(b).g;
        }
    } else if (node_g(hi) <= 0.0) {
        gb = exact(b).g;
        if (!(gb > 0.0)) not_interior();
        a = static_cast<double>(hi) * step;
        ga = node_g(hi);
    } else {
        while (hi - lo > 1) {
            const long long mid = lo + (hi - lo) / 2;
            if (node_g(mid) <= 0.0)
                lo = mid;
            else
                hi = mid;
        }
        a = static_cast<double>(lo) * step;
        b = static_cast<double>(hi) * step;
        ga = node_g(lo);
        gb = node_g(hi);
    }
    if (!(ga <= 0.0 && gb > 0.0)) not_interior();

    // Safeguarded Newton on the exact boundary curve, from the secant guess.
    // Once a step is below 1e-8 the next error is at rounding level, so the
    // last update is applied by a first-order Taylor step.
    double theta = a + (b - a) * ga / (ga - gb);
    Point x;
    for (int it = 0;; ++it) {
        const Sample sm = exact(theta);
        if (sm.g <= 0.0)
            a = theta;
        else
            b = theta;
        const bool newton_ok = sm.dg > 0.0 && theta - sm.g / sm.dg > a && theta - sm.g / sm.dg < b;
        if (newton_ok) {
            const double delta = -sm.g / sm.dg;
            if (std::fabs(delta) < 1e-8 || it >= 60) {
                x = sm.x + sm.dx * delta;
                break;
            }
            theta += delta;
        } else {
            theta = 0.5 * (a + b);
            if (b - a <= 1e-15 * (1.0 + std::fabs(theta)) || it >= 60) {
                x = exact(theta).x;
                break;
            }
        }
    }
    // Project onto the ray so the returned point is collinear with p and v.
    return p + vhat * dot(vhat, x - p);
}

// ---------------------------------------------------------------- body

ConvexBody::ConvexBody(Polygon p) : rep_(std::move(p)) {
    diameter_ = polygon_diameter(std::get<Polygon>(rep_).vertices());
}

ConvexBody::ConvexBody(Ellipse e) : rep_(std::move(e)) {
    diameter_ = 2.0 * std::get<Ellipse>(rep_).semi_major();
}

ConvexBody::ConvexBody(SupportBody s) : rep_(std::move(s)) {
    diameter_ = std::get<SupportBody>(rep_).diameter();
}

double ConvexBody::area() const {
    return std::visit([](const auto& r) { return r.area(); }, rep_);
}

Point ConvexBody::interior_point() const {
    if (const auto* p = as_polygon()) return p->centroid();
    if (const auto* e = as_ellipse()) return e->center();
    return {};
}

ConvexBody make_square(double half_side) {
    const double s = half_side;
    return Polygon({{-s, -s}, {s, -s}, {s, s}, {-s, s}});
}

ConvexBody make_standard_triangle() { return Polygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}); }

ConvexBody make_regular_polygon(std::size_t n, double circumradius, double phase) {
    std::vector<Point> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ang = phase + kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        v.push_back(Point{} + direction(ang) * circumradius);
    }
    return Polygon(std::move(v));
}

ConvexBody make_disk(double radius, Point center) { return Ellipse(center, radius, radius, 0.0); }

// ---------------------------------------------------------------- operations

Location contains(const ConvexBody& body, const Point& p) {
    if (!is_finite(p)) return Location::Exterior;
    if (const auto* poly = body.as_polygon()) {
        bool on_boundary = false;
        const std::size_t n = poly->size();
        for (std::size_t i = 0; i < n; ++i) {
            const int s = orient2d_sign(poly->vertex(i), poly->vertex(i + 1), p);
            if (s < 0) return Location::Exterior;
            if (s == 0) on_boundary = true;
        }
        return on_boundary ? Location::Boundary : Location::Interior;
    }
    const double eps = body.eps_geom();
    if (const auto* e = body.as_ellipse()) {
        const double s = e->to_unit_disk(p).norm();
        if (s == 0.0) return Location::Interior;
        const double gap = std::fabs(1.0 - s) * distance(p, e->center()) / s;
        if (gap <= eps) return Location::Boundary;
        return s < 1.0 ? Location::Interior : Location::Exterior;
    }
    const auto& sb = *body.as_support();
    const double rp = p.as_vector().norm();
    if (rp == 0.0) return Location::Interior;
    const double rb = sb.ray_exit({}, p.as_vector()).as_vector().norm();
    if (std::fabs(rp - rb) <= eps) return Location::Boundary;
    return rp < rb ? Location::Interior : Location::Exterior;
}

namespace {

double polygon_exit(const Polygon& poly, const Point& p, const Vector& v) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const double nv = dot(poly.normal(i), v);
        if (nv <= 0.0) continue;
        best = std::min(best, poly.edge_distance(i, p) / nv);
    }
    return best;
}

double ellipse_exit(const Ellipse& e, const Point& p, const Vector& v) {
    const Vector q = e.to_unit_disk(p);
    const Vector origin_image = e.to_unit_disk(e.center());
    const Vector w = e.to_unit_disk(e.center() + v) - origin_image;
    // |q + s w|^2 = 1, positive root, computed without cancellation.
    const double aa = w.squared_norm();
    const double bb = dot(q, w);
    const double cc = q.squared_norm() - 1.0;
    const double disc = std::sqrt(std::max(0.0, bb * bb - aa * cc));
    return bb > 0.0 ? -cc / (bb + disc) : (disc - bb) / aa;
}

}  // namespace

double exit_parameter(const ConvexBody& body, const Point& p, const Vector& v) {
    if (const auto* poly = body.as_polygon()) return polygon_exit(*poly, p, v);
    if (const auto* e = body.as_ellipse()) return ellipse_exit(*e, p, v);
    const Point x = body.as_support()->ray_exit(p, v);
    return dot(x - p, v) / v.squared_norm();
}

Chord chord_endpoints(const ConvexBody& body, const Point& p, const Vector& v) {
    require_finite(p, "point");
    if (contains(body, p) != Location::Interior)
        fail(ErrorCode::PointNotInterior, "chord base point must be interior");
    if (!is_finite(v) || (v.dx == 0.0 && v.dy == 0.0))
        fail(ErrorCode::ZeroDirection, "chord direction must be nonzero");
    if (const auto* sb = body.as_support()) return {sb->ray_exit(p, -v), sb->ray_exit(p, v)};
    return {p - v * exit_parameter(body, p, -v), p + v * exit_parameter(body, p, v)};
}

namespace {

// Normal angle of the support line nearest to b: minimizes h(theta) - n.b.
double support_normal_angle(const ConvexBody& body, const Point& b, double& gap) {
    if (const auto* e = body.as_ellipse()) {
        const Vector u = e->to_unit_disk(b);
        const double c = std::cos(e->rotation());
        const double s = std::sin(e->rotation());
        const double lx = u.dx / e->semi_major();
        const double ly = u.dy / e->semi_minor();
        const double theta = std::atan2(s * lx + c * ly, c * lx - s * ly);
        gap = std::fabs(e->support(theta) - dot(direction(theta), b.as_vector()));
        return theta;
    }
    const auto& sb = *body.as_support();
    const auto [theta, value] = periodic_minimize(
        [&](double t) { return sb.h(t) - dot(direction(t), b.as_vector()); }, 1024);
    // Newton on h' - t.b, whose derivative h'' + n.b is close to h + h'' > 0.
    double th = theta;
    for (int it = 0; it < 4; ++it) {
        const double c = std::cos(th), s = std::sin(th);
        const double h1 = sb.h_prime(th), h2 = sb.h_second(th);
        const double f1 = h1 - (-s * b.x + c * b.y);
        const double f2 = h2 + (c * b.x + s * b.y);
        if (!(f2 > 0.0)) break;
        th -= f1 / f2;
    }
    gap = std::fabs(distance(sb.boundary_point_at_normal(th), b));
    (void)value;
    return wrap_angle(th);
}

}  // namespace

BoundaryFeature classify_boundary_point(const ConvexBody& body, const Point& b) {
    require_finite(b, "boundary point");
    const double eps = body.eps_geom();
    if (const auto* poly = body.as_polygon()) {
        const std::size_t n = poly->size();
        for (std::size_t i = 0; i < n; ++i)
            if (distance(poly->vertex(i), b) <= eps) return {BoundaryKind::Corner, i, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = poly->vertex(i);
            const Point& c = poly->vertex(i + 1);
            const Vector e = c - a;
            const double t = dot(b - a, e) / e.squared_norm();
            if (t <= 0.0 || t >= 1.0) continue;
            if (std::fabs(poly->edge_distance(i, b)) <= eps) return {BoundaryKind::FlatEdge, i, 0.0};
        }
        fail(ErrorCode::NotOnBoundary, "point is not on the polygon boundary");
    }
    double gap = 0.0;
    const double theta = support_normal_angle(body, b, gap);
    if (contains(body, b) != Location::Boundary || gap > eps)
        fail(ErrorCode::NotOnBoundary, "point is not on the boundary");
    return {BoundaryKind::Smooth, 0, theta};
}

SupportCone support_lines_at(const ConvexBody& body, const Point& b) {
    const BoundaryFeature f = classify_boundary_point(body, b);
    switch (f.kind) {
        case BoundaryKind::Corner: {
            const auto* poly = body.as_polygon();
            const std::size_t n = poly->size();
            return {poly->vertex(f.index), poly->normal((f.index + n - 1) % n),
                    poly->normal(f.index)};
        }
        case BoundaryKind::FlatEdge: {
            const Vector nrm = body.as_polygon()->normal(f.index);
            return {b, nrm, nrm};
        }
        case BoundaryKind::Smooth: {
            const Vector nrm = direction(f.normal_angle);
            return {b, nrm, nrm};
        }
    }
    fail(ErrorCode::NotOnBoundary, "unclassified boundary point");
}

double curvature_radius(const ConvexBody& body, double normal_angle) {
    if (const auto* e = body.as_ellipse()) return e->curvature_radius(normal_angle);
    if (const auto* s = body.as_support()) return s->curvature_radius(normal_angle);
    fail(ErrorCode::UnsupportedRepresentation, "polygons have no curvature radius");
}

RollingRadii rolling_radii(const ConvexBody& body) {
    if (const auto* e = body.as_ellipse()) {
        const double a = e->semi_major();
        const double b = e->semi_minor();
        return {0.5 * b * b / a, a * a / b};
    }
    const auto* s = body.as_support();
    if (s == nullptr) fail(ErrorCode::UnsupportedRepresentation, "polygons have no rolling radii");
    const std::size_t grid = 16 * s->samples().size();
    const double rho_min =
        periodic_minimize([&](double t) { return s->curvature_radius(t); }, grid).second;
    const double rho_max =
        -periodic_minimize([&](double t) { return -s->curvature_radius(t); }, grid).second;
    return {0.5 * rho_min, rho_max};
}

Point apply_affine(const Point& p, const AffineMap& map) { return map.apply(p); }

ConvexBody apply_affine(const ConvexBody& body, const AffineMap& map) {
    const double det = map.determinant();
    const double scale = std::max({std::fabs(map.a11), std::fabs(map.a12), std::fabs(map.a21),
                                   std::fabs(map.a22)});
    if (!std::isfinite(det) || !is_finite(map.offset) || !(std::fabs(det) > 1e-14 * scale * scale))
        fail(ErrorCode::SingularMap, "affine map is singular");
    if (const auto* poly = body.as_polygon()) {
        std::vector<Point> v;
        v.reserve(poly->size());
        for (const Point& p : poly->vertices()) v.push_back(map.apply(p));
        return Polygon(std::move(v));
    }
    if (const auto* e = body.as_ellipse()) {
        // M = A R D; the image axes are the singular values of M.
        const double c = std::cos(e->rotation()), s = std::sin(e->rotation());
        const double a = e->semi_major(), b = e->semi_minor();
        const double m11 = (map.a11 * c + map.a12 * s) * a;
        const double m12 = (-map.a11 * s + map.a12 * c) * b;
        const double m21 = (map.a21 * c + map.a22 * s) * a;
        const double m22 = (-map.a21 * s + map.a22 * c) * b;
        const double s11 = m11 * m11 + m12 * m12;
        const double s12 = m11 * m21 + m12 * m22;
        const double s22 = m21 * m21 + m22 * m22;
        const double half_gap = 0.5 * std::hypot(s11 - s22, 2.0 * s12);
        const double mean = 0.5 * (s11 + s22);
        const double major = std::sqrt(mean + half_gap);
        const double minor = std::fabs(m11 * m22 - m12 * m21) / major;
        const double angle = 0.5 * std::atan2(2.0 * s12, s11 - s22);
        return Ellipse(map.apply(e->center()), major, minor, angle);
    }
    const auto& sb = *body.as_support();
    const std::size_t n = sb.samples().size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vector nrm = direction(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
        const Vector pulled = map.apply_transpose(nrm);
        out[j] = pulled.norm() * sb.h(std::atan2(pulled.dy, pulled.dx)) +
                 dot(nrm, map.offset);
    }
    return SupportBody(std::move(out));
}

ConvexBody apply_homography(const ConvexBody& body, const Homography& map) {
    const auto* poly = body.as_polygon();
    if (poly == nullptr)
        fail(ErrorCode::UnsupportedRepresentation, "homographies apply to polygons only");
    double wmin = std::numeric_limits<double>::infinity();
    double wmax = -wmin;
    double wscale = 0.0;
    for (const Point& p : poly->vertices()) {
        const double w = map.weight(p);
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
        wscale = std::max(wscale, std::fabs(map.m[2][0] * p.x) + std::fabs(map.m[2][1] * p.y) +
                                      std::fabs(map.m[2][2]));
    }
    const double tiny = 1e-12 * wscale;
    if (!(wmin > tiny) && !(wmax < -tiny))
        fail(ErrorCode::ImageUnbounded, "the closure meets the line sent to infinity");
    std::vector<Point> v;
    v.reserve(poly->size());
    for (const Point& p : poly->vertices()) v.push_back(map.apply(p));
    return Polygon(std::move(v));
}

double support_function(const ConvexBody& body, double theta) {
    if (const auto* poly = body.as_polygon()) {
        const Vector n = direction(theta);
        double h = -std::numeric_limits<double>::infinity();
        for (const Point& p : poly->vertices()) h = std::max(h, dot(n, p.as_vector()));
        return h;
    }
    if (const auto* e = body.as_ellipse()) return e->support(theta);
    return body.as_support()->h(theta);
}

Point boundary_point_at_normal(const ConvexBody& body, double theta) {
    if (const auto* e = body.as_ellipse()) return e->boundary_point_at_normal(theta);
    if (const auto* s = body.as_support()) return s->boundary_point_at_normal(theta);
    fail(ErrorCode::UnsupportedRepresentation, "polygon boundaries are not parametrized by normal");
}

double boundary_distance(const ConvexBody& body, const Point& p) {
    if (const auto* poly = body.as_polygon()) {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < poly->size(); ++i) d = std::min(d, poly->edge_distance(i, p));
        return d;
    }
    if (const auto* e = body.as_ellipse()) {
        return periodic_minimize(
                   [&](double t) { return e->support(t) - dot(direction(t), p.as_vector()); }, 256)
            .second;
    }
    const auto& sb = *body.as_support();
    return periodic_minimize(
               [&](double t) { return sb.h(t) - dot(direction(t), p.as_vector()); }, 512)
        .second;
}

std::vector<Point> sample_boundary(const ConvexBody& body, std::size_t n) {
    std::vector<Point> out;
    if (const auto* poly = body.as_polygon()) {
        const std::size_t k = poly->size();
        double perimeter = 0.0;
        for (std::size_t i = 0; i < k; ++i) perimeter += distance(poly->vertex(i), poly->vertex(i + 1));
        for (std::size_t i = 0; i < k; ++i) {
            const Point& a = poly->vertex(i);
            const Point& b = poly->vertex(i + 1);
            const auto pieces = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::floor(static_cast<double>(n) * distance(a, b) /
                                                       perimeter)));
            for (std::size_t j = 0; j < pieces; ++j)
                out.push_back(lerp(a, b, static_cast<double>(j) / static_cast<double>(pieces)));
        }
        return out;
    }
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        if (const auto* e = body.as_ellipse())
            out.push_back(e->from_unit_disk(direction(t)));
        else
            out.push_back(body.as_support()->boundary_point_at_normal(t));
    }
    return out;
}

double cross_ratio(const Point& a, const Point& p, const Point& q, const Point& b) {
    return (distance(q, a) / distance(p, a)) * (distance(p, b) / distance(q, b));
}

std::pair<double, double> periodic_minimize(const std::function<double(double)>& f,
                                            std::size_t grid) {
    grid = std::max<std::size_t>(grid, 8);
    const double step = kTwoPi / static_cast<double>(grid);
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid; ++j) {
        const double v = f(step * static_cast<double>(j));
        if (v < best_val) {
            best_val = v;
            best = j;
        }
    }
    const double center = step * static_cast<double>(best);
    double fmin = best_val;
    const double arg = golden_section(f, center - step, center + step, fmin);
    if (fmin < best_val) return {wrap_angle(arg), fmin};
    return {center, best_val};
}

}  // namespace hilbert
