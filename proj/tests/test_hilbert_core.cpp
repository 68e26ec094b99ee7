#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hilbert/hilbert_core.hpp"

using namespace hilbert;

namespace {

ConvexBody trefoil_body() {
    return SupportBody::from_function([](double t) { return 1.0 + 0.1 * std::cos(3.0 * t); });
}

// Klein-model ball area in the unit disk: pi (1 - |x|^2)^{3/2}.
double klein_ball_area(const Point& x) {
    return kPi * std::pow(1.0 - x.as_vector().squared_norm(), 1.5);
}

Point random_point_in(const ConvexBody& body, std::mt19937_64& rng, double shrink = 0.95) {
    const Point c = body.interior_point();
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const Point p = c + Vector{u(rng), u(rng)} * body.diameter();
        if (contains(body, p) != Location::Interior) continue;
        const Point q = c + (p - c) * shrink;
        return q;
    }
}

}  // namespace

TEST(Distance, ReferenceValues) {
    const ConvexBody disk = make_disk();
    EXPECT_EQ(hilbert_distance(disk, {0, 0}, {0, 0}), 0.0);
    EXPECT_NEAR(hilbert_distance(disk, {0, 0}, {0.5, 0}), 0.5 * std::log(3.0), 1e-15);
    EXPECT_NEAR(hilbert_distance(make_standard_triangle(), {0.25, 0.25}, {0.5, 0.25}),
                std::log(2.0), 1e-15);
    EXPECT_THROW(hilbert_distance(disk, {0, 0}, {1, 0}), HilbertError);
}

TEST(Distance, KleinModelClosedForm) {
    // In the unit disk the Hilbert metric is the Klein model:
    // cosh d(p, q) = (1 - p.q) / sqrt((1 - |p|^2)(1 - |q|^2)).
    std::mt19937_64 rng(5);
    const ConvexBody disk = make_disk();
    for (int i = 0; i < 200; ++i) {
        const Point p = random_point_in(disk, rng);
        const Point q = random_point_in(disk, rng);
        const Vector a = p.as_vector(), b = q.as_vector();
        const double ch = (1.0 - dot(a, b)) / std::sqrt((1.0 - a.squared_norm()) * (1.0 - b.squared_norm()));
        EXPECT_NEAR(hilbert_distance(disk, p, q), std::acosh(ch), 1e-10);
    }
}

TEST(Distance, MetricAxioms) {
    std::mt19937_64 rng(17);
    const std::vector<ConvexBody> bodies{make_square(), make_regular_polygon(5, 1.0, 0.3),
                                         Ellipse({0.2, 0.1}, 2.0, 1.0, 0.5), trefoil_body()};
    for (const ConvexBody& body : bodies) {
        for (int i = 0; i < 200; ++i) {
            const Point p = random_point_in(body, rng);
            const Point q = random_point_in(body, rng);
            const Point r = random_point_in(body, rng);
            const double pq = hilbert_distance(body, p, q);
            EXPECT_NEAR(pq, hilbert_distance(body, q, p), 1e-12 * std::max(1.0, pq));
            EXPECT_LE(hilbert_distance(body, p, r), pq + hilbert_distance(body, q, r) + 1e-9);
            EXPECT_GT(pq, 0.0);
        }
    }
}

TEST(Norm, ReferenceValues) {
    const ConvexBody sq = make_square();
    EXPECT_EQ(finsler_norm(sq, {0.2, 0.1}, {0, 0}), 0.0);
    for (double y : {0.0, 0.3, -0.7, 0.95}) EXPECT_NEAR(finsler_norm(sq, {0, y}, {0, 1}), 1.0 / (1.0 - y * y), 1e-14);
    for (double a : {0.0, 1.0, 2.5}) EXPECT_NEAR(finsler_norm(make_disk(), {0, 0}, direction(a)), 1.0, 1e-15);
}

TEST(Norm, PolygonClosedFormMatchesChordRoute) {
    std::mt19937_64 rng(23);
    const ConvexBody body = make_regular_polygon(7, 1.5, 0.2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const Point p = random_point_in(body, rng);
        const Vector v{u(rng), u(rng)};
        const Chord c = chord_endpoints(body, p, v);
        const double via_chord = 0.5 * v.norm() * (1.0 / distance(p, c.p_minus) + 1.0 / distance(p, c.p_plus));
        EXPECT_NEAR(finsler_norm(body, p, v), via_chord, 1e-12 * via_chord);
    }
}

TEST(Norm, HomogeneityAndMetricDerivative) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::vector<ConvexBody> bodies{make_square(), Ellipse({0, 0}, 2.0, 1.0, 0.2), trefoil_body()};
    for (const ConvexBody& body : bodies) {
        for (int i = 0; i < 50; ++i) {
            const Point p = random_point_in(body, rng, 0.8);
            const Vector v{u(rng), u(rng)};
            const double f = finsler_norm(body, p, v);
            for (double lam : {-3.0, 0.5, 7.0})
                EXPECT_NEAR(finsler_norm(body, p, v * lam), std::fabs(lam) * f, 1e-12 * std::fabs(lam) * f);
            const double e3 = std::fabs(hilbert_distance(body, p, p + v * 1e-3) / 1e-3 - f);
            const double e4 = std::fabs(hilbert_distance(body, p, p + v * 1e-4) / 1e-4 - f);
            EXPECT_LT(e4, 0.2 * e3 + 1e-9);  // first-order convergence
        }
    }
}

TEST(Norm, MonotoneUnderInclusion) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const ConvexBody inner = make_disk(0.9);
    const ConvexBody outer = make_square();
    for (int i = 0; i < 500; ++i) {
        const Point p = random_point_in(inner, rng);
        const Vector v{u(rng), u(rng)};
        EXPECT_LE(finsler_norm(outer, p, v), finsler_norm(inner, p, v) + 1e-12);
        EXPECT_LE(ball_area(inner, p).value, ball_area(outer, p).value + 1e-9);
    }
}

TEST(Ball, SquareShapes) {
    const ConvexBody sq = make_square();
    UnitBallPolygon b = unit_ball(sq, {0, 0});
    EXPECT_EQ(b.corner_count(), 4u);
    EXPECT_NEAR(b.area(), 4.0, 1e-14);
    b = unit_ball(sq, {0.3, 0.3});
    EXPECT_EQ(b.corner_count(), 6u);
    b = unit_ball(sq, {0.3, 0.5});
    EXPECT_EQ(b.corner_count(), 8u);
    EXPECT_TRUE(b.is_convex());
    EXPECT_TRUE(b.is_centrally_symmetric(1e-12));
}

TEST(Ball, SquareSandwich) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng), y = u(rng);
        const double a = ball_area(make_square(), {x, y}).value;
        const double base = (1 - x * x) * (1 - y * y);
        EXPECT_GE(a - 2.0 * base, -1e-12);
        EXPECT_GE(4.0 * base - a, -1e-12);
    }
}

TEST(Ball, TriangleDomainInvertsDensity) {
    const ConvexBody tri = make_standard_triangle();
    const UnitBallPolygon b = unit_ball(tri, {1.0 / 3, 1.0 / 3});
    EXPECT_EQ(b.corner_count(), 6u);
    EXPECT_NEAR(b.area(), 4.0 / 9.0, 1e-14);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
        const Point p = random_point_in(tri, rng, 0.99);
        EXPECT_NEAR(ball_area(tri, p).value, 12.0 * p.x * p.y * (1 - p.x - p.y), 1e-13);
    }
    EXPECT_NEAR(density(tri, {1.0 / 3, 1.0 / 3}), 9.0 * kPi / 4.0, 1e-12);
    EXPECT_NEAR(density(make_square(), {0, 0}), kPi / 4.0, 1e-15);
}

TEST(Ball, DiskMatchesKleinModel) {
    const ConvexBody disk = make_disk();
    EXPECT_NEAR(ball_area(disk, {0, 0}).value, kPi, 1e-8);
    EXPECT_NEAR(density(disk, {0, 0}), 1.0, 1e-8);
    for (const Point p : {Point{0.5, 0.0}, Point{0.3, -0.6}, Point{0.0, 0.95}, Point{0.99, 0.0}}) {
        const BallArea a = ball_area(disk, p);
        EXPECT_NEAR(a.value, klein_ball_area(p), 1e-8 * klein_ball_area(p));
        EXPECT_LE(std::fabs(a.value - klein_ball_area(p)), 10.0 * a.error + 1e-14);
        const BallArea polar = smooth_ball_area_polar(disk, p);
        EXPECT_NEAR(polar.value, klein_ball_area(p), 1e-10 * klein_ball_area(p));
    }
}

TEST(Ball, SampledPolygonIsInscribedAndSymmetric) {
    const ConvexBody e = Ellipse({0, 0}, 2.0, 1.0, 0.4);
    const UnitBallPolygon b = unit_ball(e, {0.5, 0.2}, 64);
    EXPECT_EQ(b.vertices.size(), 64u);
    EXPECT_EQ(b.exactness, BallExactness::Sampled);
    EXPECT_TRUE(b.is_convex());
    EXPECT_TRUE(b.is_centrally_symmetric(1e-12));
    EXPECT_LT(b.area(), ball_area(e, {0.5, 0.2}).value);
    EXPECT_THROW(unit_ball(e, {0, 0}, 15), HilbertError);
}

TEST(Ball, SupportBodyEstimatorsAgree) {
    const ConvexBody body = trefoil_body();
    for (const Point p : {Point{0, 0}, Point{0.4, 0.3}, Point{-0.8, 0.1}}) {
        const BallArea a = ball_area(body, p);
        const BallArea b = smooth_ball_area_polar(body, p, 512);
        EXPECT_LE(b.error, 1e-8 * b.value);
        EXPECT_NEAR(a.value, b.value, 1e-7 * b.value);
        EXPECT_LE(std::fabs(a.value - b.value), 10.0 * a.error + 1e-12);
    }
}

TEST(Ball, RejectsNearBoundaryForSampledBodies) {
    EXPECT_THROW(ball_area(make_disk(), {1.0 - 1e-8, 0.0}), HilbertError);
}

TEST(Projective, DistancePreservedByHomography) {
    Homography h;
    h.m = {{{1.1, 0.2, 0.3}, {-0.1, 0.9, 0.2}, {0.15, -0.1, 1.0}}};
    const ConvexBody body = make_regular_polygon(6, 1.0, 0.1);
    const ConvexBody image = apply_homography(body, h);
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const Point p = random_point_in(body, rng);
        const Point q = random_point_in(body, rng);
        EXPECT_NEAR(hilbert_distance(image, h.apply(p), h.apply(q)), hilbert_distance(body, p, q), 1e-8);
    }
}
