#include "hilbert/geometry.hpp"

#include <array>
#include <cstddef>

namespace hilbert {

namespace {

struct TwoTerm {
    double hi;
    double lo;
};

TwoTerm two_sum(double a, double b) {
    const double s = a + b;
    const double bv = s - a;
    const double av = s - bv;
    return {s, (a - av) + (b - bv)};
}

TwoTerm two_product(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// Shewchuk's grow-expansion: adds b to the nonoverlapping expansion e[0..n),
// writing n + 1 components back into e.
std::size_t grow_expansion(std::array<double, 13>& e, std::size_t n, double b) {
    double q = b;
    for (std::size_t i = 0; i < n; ++i) {
        const TwoTerm t = two_sum(q, e[i]);
        e[i] = t.lo;
        q = t.hi;
    }
    e[n] = q;
    return n + 1;
}

}  // namespace

int orient2d_sign(const Point& a, const Point& b, const Point& c) {
    // Fast path with a conservative forward error bound.
    const double det_left = (b.x - a.x) * (c.y - a.y);
    const double det_right = (b.y - a.y) * (c.x - a.x);
    const double det = det_left - det_right;
    const double bound = 1e-15 * (std::fabs(det_left) + std::fabs(det_right));
    if (det > bound) return 1;
    if (-det > bound) return -1;

    // bx*cy - bx*ay - ax*cy - by*cx + by*ax + ay*cx
    const std::array<TwoTerm, 6> products{
        two_product(b.x, c.y),  two_product(-b.x, a.y), two_product(-a.x, c.y),
        two_product(-b.y, c.x), two_product(b.y, a.x),  two_product(a.y, c.x),
    };
    std::array<double, 13> expansion{};
    std::size_t n = 0;
    for (const TwoTerm& p : products) {
        n = grow_expansion(expansion, n, p.lo);
        n = grow_expansion(expansion, n, p.hi);
    }
    for (std::size_t i = n; i-- > 0;) {
        if (expansion[i] > 0.0) return 1;
        if (expansion[i] < 0.0) return -1;
    }
    return 0;
}

}  // namespace hilbert
