#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "hilbert/hilbert_core.hpp"
#include "hilbert/simplex_analytic.hpp"

using namespace hilbert;

namespace {

// Tanh-sinh quadrature on (a, b); tolerates integrable endpoint singularities.
double tanh_sinh(const std::function<double(double)>& f, double a, double b) {
    const double h = 1.0 / 64.0;
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int k = -64 * 7; k <= 64 * 7; ++k) {
        const double t = k * h;
        const double s = 0.5 * kPi * std::sinh(t);
        const double x = std::tanh(s);
        const double w = 0.5 * kPi * std::cosh(t) / (std::cosh(s) * std::cosh(s));
        const double left = half * (1.0 + x);  // distance from a
        const double right = half * (1.0 - x);
        if (left <= 0.0 || right <= 0.0) continue;
        const double point = x < 0 ? a + left : b - right;
        if (point <= a || point >= b) continue;
        sum += w * f(point);
    }
    return sum * h * half;
}

// F(t) straight from the four-integral representation.
double f_by_quadrature(double t) {
    const double x = 1.0 / (1.0 + t);
    const double i1 = tanh_sinh([](double u) { return std::log1p(-u) / u; }, 0.0, 1.0);
    const double i2 = tanh_sinh([](double v) { return std::log1p(v) / v; }, 0.0, x);
    const double i3 = tanh_sinh([](double u) { return std::log1p(u) / u; }, 0.0, t);
    const double i4 = tanh_sinh([t](double v) { return std::log1p(v) / (1.0 - t * v); }, 0.0, x);
    return -2.0 * i1 + 2.0 * i2 + i3 + t * i4;
}

// Area of T(alpha) from the density, with the inner y-integral done in closed form.
double area_by_quadrature(double alpha) {
    // ln(y / (1 - x - y)) between y0 = (1 - alpha)(1 - x / alpha) and 1 - alpha,
    // rearranged with log1p so that x -> 0 does not cancel.
    const auto inner = [alpha](double x) {
        if (x >= alpha) return 0.0;
        const double jump = -2.0 * std::log1p(-x / alpha) +
                            std::log1p(x * (1.0 - 2.0 * alpha) / (alpha * alpha));
        return jump / (x * (1.0 - x));
    };
    return kPi / 12.0 * tanh_sinh(inner, 0.0, alpha);
}

}  // namespace

TEST(Alpha, ReferenceValues) {
    EXPECT_DOUBLE_EQ(canonical_alpha({0.5, 0.5, 0.5}), 0.5);
    EXPECT_NEAR(canonical_alpha({1.0 / 3, 1.0 / 3, 1.0 / 3}), 1.0 / 9.0, 1e-15);
    EXPECT_NEAR(canonical_alpha({2.0 / 3, 2.0 / 3, 2.0 / 3}), 1.0 / 9.0, 1e-15);
    EXPECT_THROW(canonical_alpha({0.0, 0.5, 0.5}), HilbertError);
}

TEST(Alpha, ComplementSwapIsInvolution) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int i = 0; i < 500; ++i) {
        const BarycentricSpec s{u(rng), u(rng), u(rng)};
        const BarycentricSpec c{1 - s.lambda, 1 - s.mu, 1 - s.nu};
        EXPECT_NEAR(canonical_alpha(s), canonical_alpha(c), 1e-14);
        EXPECT_GT(canonical_alpha(s), 0.0);
        EXPECT_LE(canonical_alpha(s), 0.5);
    }
}

TEST(CanonicalMap, StandardTriangleMidpointsIsIdentity) {
    const CanonicalMap cm = canonical_map({Point{1, 0}, Point{0, 1}, Point{0, 0}}, {0.5, 0.5, 0.5});
    EXPECT_DOUBLE_EQ(cm.alpha, 0.5);
    for (const Point p : {Point{0.2, 0.3}, Point{0.5, 0.5}, Point{0.0, 0.5}})
        EXPECT_NEAR(distance(cm.map.apply(p), p), 0.0, 1e-15);
}

TEST(CanonicalMap, RandomConfigurationsLandOnCanonicalTriangle) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        std::array<Point, 3> tri{Point{c(rng), c(rng)}, Point{c(rng), c(rng)}, Point{c(rng), c(rng)}};
        if (std::fabs(orient2d(tri[0], tri[1], tri[2])) < 0.5) continue;
        const BarycentricSpec s{u(rng), u(rng), u(rng)};
        const Point a = lerp(tri[0], tri[1], s.lambda);
        const Point b = lerp(tri[1], tri[2], s.mu);
        const Point cc = lerp(tri[2], tri[0], s.nu);
        const CanonicalMap cm = canonical_map(tri, s);
        EXPECT_NEAR(cm.alpha, canonical_alpha(s), 1e-14);
        const auto t = canonical_triangle(cm.alpha);
        const Point ib = cm.swapped ? t[2] : t[1];
        const Point ic = cm.swapped ? t[1] : t[2];
        EXPECT_LT(distance(cm.map.apply(a), t[0]), 1e-10);
        EXPECT_LT(distance(cm.map.apply(b), ib), 1e-10);
        EXPECT_LT(distance(cm.map.apply(cc), ic), 1e-10);
        // The domain goes onto the standard triangle.
        std::array<Point, 3> img{cm.map.apply(tri[0]), cm.map.apply(tri[1]), cm.map.apply(tri[2])};
        for (const Point& v : img) {
            const bool vertex = distance(v, {0, 0}) < 1e-10 || distance(v, {1, 0}) < 1e-10 ||
                                distance(v, {0, 1}) < 1e-10;
            EXPECT_TRUE(vertex);
        }
    }
}

TEST(CanonicalMap, AlphaInvariantUnderAffineChange) {
    const std::array<Point, 3> base{Point{1, 0}, Point{0, 1}, Point{0, 0}};
    const BarycentricSpec s{0.3, 0.7, 0.45};
    const AffineMap m{1.3, 0.4, -0.2, 0.8, {0.5, -1.0}};
    const CanonicalMap a = canonical_map(base, s);
    const CanonicalMap b = canonical_map({m.apply(base[0]), m.apply(base[1]), m.apply(base[2])}, s);
    EXPECT_NEAR(a.alpha, b.alpha, 1e-15);
}

TEST(CanonicalMap, IsAHilbertIsometry) {
    const std::array<Point, 3> tri{Point{0.2, -0.5}, Point{2.0, 0.4}, Point{-0.3, 1.7}};
    const CanonicalMap cm = canonical_map(tri, {0.2, 0.35, 0.8});
    const ConvexBody dom = Polygon({tri[0], tri[1], tri[2]});
    const ConvexBody std_tri = make_standard_triangle();
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    for (int i = 0; i < 100; ++i) {
        auto sample = [&] {
            double x = u(rng), y = u(rng);
            if (x + y > 0.95) {
                x *= 0.5;
                y *= 0.5;
            }
            return tri[0] + (tri[1] - tri[0]) * x + (tri[2] - tri[0]) * y;
        };
        const Point p = sample(), q = sample();
        EXPECT_NEAR(hilbert_distance(std_tri, cm.map.apply(p), cm.map.apply(q)),
                    hilbert_distance(dom, p, q), 1e-9);
    }
    EXPECT_THROW(canonical_map({Point{0, 0}, Point{1, 1}, Point{2, 2}}, {0.5, 0.5, 0.5}), HilbertError);
}

TEST(TriangleDensity, Values) {
    EXPECT_NEAR(triangle_density({1.0 / 3, 1.0 / 3}), 9.0 * kPi / 4.0, 1e-13);
    EXPECT_THROW(triangle_density({0.0, 0.5}), HilbertError);
    double prev = 0.0;
    for (double x : {0.3, 0.1, 0.01, 1e-4}) {
        const double d = triangle_density({x, 0.3});
        EXPECT_GT(d, prev);
        prev = d;
    }
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.01, 0.6);
    const ConvexBody tri = make_standard_triangle();
    for (int i = 0; i < 200; ++i) {
        const Point p{u(rng), u(rng) * 0.6};
        EXPECT_NEAR(triangle_density(p), density(tri, p), 1e-8 * triangle_density(p));
    }
}

TEST(Dilog, KnownValues) {
    EXPECT_NEAR(dilog(1.0), kPi * kPi / 6.0, 1e-15);
    EXPECT_NEAR(dilog(-1.0), -kPi * kPi / 12.0, 1e-15);
    EXPECT_EQ(dilog(0.0), 0.0);
    const double l2 = std::log(2.0);
    EXPECT_NEAR(dilog(0.5), kPi * kPi / 12.0 - 0.5 * l2 * l2, 1e-15);
    EXPECT_THROW(dilog(1.5), HilbertError);
}

TEST(Dilog, MatchesSlowSeriesAndDuplication) {
    for (double x = -0.95; x <= 0.95; x += 0.05) {
        long double s = 0.0L, term = 1.0L;
        for (int k = 1; k < 4000; ++k) {
            term *= x;
            s += term / (static_cast<long double>(k) * k);
        }
        EXPECT_NEAR(dilog(x), static_cast<double>(s), 1e-14);
    }
    for (double x = 0.0; x <= 1.0; x += 1.0 / 64) EXPECT_NEAR(dilog(x) + dilog(-x), 0.5 * dilog(x * x), 1e-13);
}

TEST(FClosed, ValueAtZeroAndQuadrature) {
    EXPECT_DOUBLE_EQ(f_closed(0.0), kPi * kPi / 2.0);
    for (double t : {0.5, 1.0, 2.0, 7.5}) EXPECT_NEAR(f_closed(t), f_by_quadrature(t), 1e-10);
    EXPECT_NEAR(f_closed(1e-9), kPi * kPi / 2.0, 1e-7);
    EXPECT_THROW(f_closed(-0.1), HilbertError);
}

TEST(FClosed, StrictlyIncreasing) {
    double prev = f_closed(0.0);
    for (int i = 1; i <= 100; ++i) {
        const double v = f_closed(0.1 * i);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(FPrime, MatchesFiniteDifference) {
    for (double t : {0.01, 0.1, 1.0, 5.0, 10.0}) {
        const double h = 1e-5;
        const double fd = (f_closed(t + h) - f_closed(t - h)) / (2 * h);
        EXPECT_NEAR(fd, f_prime(t), 1e-8);
        EXPECT_GT(f_prime(t), 0.0);
    }
    EXPECT_THROW(f_prime(0.0), HilbertError);
}

TEST(FPrime, PrintedFormulaIsPositiveButNotTheDerivative) {
    EXPECT_NEAR(f_prime_printed(1.0), 2.0 * std::log(4.0 / 3.0), 1e-15);
    EXPECT_NEAR(f_prime(1.0), 0.5 * std::log(2.0), 1e-15);
    for (double t : {0.01, 0.1, 1.0, 5.0, 10.0}) EXPECT_GT(f_prime_printed(t), 0.0);
    EXPECT_GT(std::fabs(f_prime_printed(1.0) - f_prime(1.0)), 0.1);
}

TEST(IdealAreaClosed, ValuesAndMonotonicity) {
    EXPECT_NEAR(ideal_area_closed(0.5), std::pow(kPi, 3) / 24.0, 1e-15);
    EXPECT_NEAR(ideal_area_closed(1.0 / 3), kPi / 12.0 * f_closed(1.0), 1e-15);
    EXPECT_GT(ideal_area_closed(0.2), ideal_area_closed(0.3));
    EXPECT_GT(ideal_area_closed(0.3), ideal_area_closed(0.5));
    for (double a : {0.05, 0.1, 0.2, 1.0 / 3, 0.45, 0.5})
        EXPECT_NEAR(ideal_area_closed(a), area_by_quadrature(a), 1e-10);
    double prev = 1e300;
    for (int i = 1; i <= 100; ++i) {
        const double v = ideal_area_closed(0.005 * i);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_THROW(ideal_area_closed(0.6), HilbertError);
}

TEST(SquareBounds, Values) {
    const auto [lo, hi] = square_ball_bounds({0, 0});
    EXPECT_EQ(lo, 2.0);
    EXPECT_EQ(hi, 4.0);
    EXPECT_NEAR(ball_area(make_square(), {0, 0}).value, hi, 1e-15);
    EXPECT_THROW(square_ball_bounds({1.0, 0.0}), HilbertError);
}
