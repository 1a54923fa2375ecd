#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "b3b/shape.hpp"

namespace b3b {

/// Determinant whose zero set is the balanced configurations:
/// rows (1,1,1), (m_i (sum - 2 s_i)), (s_i^{-3/2}).
inline double balance_determinant(const MassTriple& m, const Shape& s) {
    if (!(s.a > 0.0 && s.b > 0.0 && s.c > 0.0))
        throw collision_error("balance_determinant: zero mutual distance");
    const double A1 = m.m1 * (s.b + s.c - s.a);
    const double A2 = m.m2 * (s.c + s.a - s.b);
    const double A3 = m.m3 * (s.a + s.b - s.c);
    const double B1 = std::pow(s.a, -1.5);
    const double B2 = std::pow(s.b, -1.5);
    const double B3 = std::pow(s.c, -1.5);
    return A1 * (B2 - B3) + A2 * (B3 - B1) + A3 * (B1 - B2);
}

/// Magnitude of the determinant terms; |B| below ~1e-13 of this is zero.
inline double balance_scale(const MassTriple& m, const Shape& s) {
    const double A1 = std::abs(m.m1 * (s.b + s.c - s.a));
    const double A2 = std::abs(m.m2 * (s.c + s.a - s.b));
    const double A3 = std::abs(m.m3 * (s.a + s.b - s.c));
    const double B1 = std::pow(s.a, -1.5);
    const double B2 = std::pow(s.b, -1.5);
    const double B3 = std::pow(s.c, -1.5);
    return A1 * (B2 + B3) + A2 * (B3 + B1) + A3 * (B1 + B2);
}

/// Analytic gradient (dB/da, dB/db, dB/dc).
inline Eigen::Vector3d balance_gradient(const MassTriple& m, const Shape& s) {
    const double A1 = m.m1 * (s.b + s.c - s.a);
    const double A2 = m.m2 * (s.c + s.a - s.b);
    const double A3 = m.m3 * (s.a + s.b - s.c);
    const double B1 = std::pow(s.a, -1.5);
    const double B2 = std::pow(s.b, -1.5);
    const double B3 = std::pow(s.c, -1.5);
    const double dB1 = -1.5 * std::pow(s.a, -2.5);
    const double dB2 = -1.5 * std::pow(s.b, -2.5);
    const double dB3 = -1.5 * std::pow(s.c, -2.5);
    return Eigen::Vector3d(
        -m.m1 * (B2 - B3) + m.m2 * (B3 - B1) + m.m3 * (B1 - B2) + (A3 - A2) * dB1,
        m.m1 * (B2 - B3) - m.m2 * (B3 - B1) + m.m3 * (B1 - B2) + (A1 - A3) * dB2,
        m.m1 * (B2 - B3) + m.m2 * (B3 - B1) - m.m3 * (B1 - B2) + (A2 - A1) * dB3);
}

/// d^2 B / da^2 = (3/4) a^{-7/2} (a (m3 - m2) + 5 (b - c)(m2 + m3)).
inline double d2B_da2(const MassTriple& m, const Shape& s) {
    if (!(s.a > 0.0))
        throw collision_error("d2B_da2: zero mutual distance");
    return 0.75 * std::pow(s.a, -3.5)
           * (s.a * (m.m3 - m.m2) + 5.0 * (s.b - s.c) * (m.m2 + m.m3));
}

/// Roots of B(a, b, c) = 0 along an a-segment (b, c fixed).
struct SegmentRoots {
    double b = 0.0, c = 0.0;
    std::vector<double> roots;          // ascending, at most two
    std::optional<double> inflection;   // zero of d2B/da2, if inside (0, inf)
    bool identically_zero = false;      // m2 = m3 and b = c
};

struct SegmentScan {
    double a_min = 1e-6;
    double a_max = 1e6;
    int per_decade = 64;
};

namespace detail {

/// Bisection to relative width `rtol`, then Newton polished against the
/// analytic derivative. The bracket is kept; Newton steps leaving it fall
/// back to bisection.
inline double polish_root(const std::function<double(double)>& f,
                          const std::function<double(double)>& df,
                          double lo, double hi, double flo, double rtol) {
    for (int it = 0; it < 200 && (hi - lo) > rtol * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 30; ++it) {
        const double fx = f(x);
        const double dfx = df(x);
        if (dfx == 0.0) break;
        const double step = fx / dfx;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= 1e-16 * x) {
            x = xn;
            break;
        }
        x = xn;
    }
    return x;
}

} // namespace detail

/// Sign-scan a log grid over (a_min, a_max), bracket every crossing and
/// polish it. Tangent zeros are caught at the extrema of B located from
/// sign changes of dB/da. The degenerate segment (m2 = m3 with b = c) is
/// flagged instead of enumerated.
inline SegmentRoots roots_on_a_segment(const MassTriple& m, double b, double c,
                                       const SegmentScan& scan = {}) {
    if (!(b > 0.0 && c > 0.0))
        throw std::domain_error("roots_on_a_segment: b, c must be positive");
    SegmentRoots out;
    out.b = b;
    out.c = c;

    if (std::abs(m.m2 - m.m3) <= 1e-9 * m.M && std::abs(b - c) <= 1e-9 * std::max(b, c)) {
        out.identically_zero = true;
        return out;
    }

    const double denom = m.m2 - m.m3;
    if (denom != 0.0) {
        const double ainf = 5.0 * (b - c) * (m.m2 + m.m3) / denom;
        if (ainf > 0.0) out.inflection = ainf;
    }

    auto fB = [&](double a) { return balance_determinant(m, Shape{a, b, c}); };
    auto dfB = [&](double a) { return balance_gradient(m, Shape{a, b, c})[0]; };

    const int n = std::max(2, int(std::log10(scan.a_max / scan.a_min) * scan.per_decade) + 1);
    const double lw = std::log(scan.a_min);
    const double step = (std::log(scan.a_max) - lw) / (n - 1);

    double prev_a = scan.a_min;
    double prev_f = fB(prev_a);
    double prev_d = dfB(prev_a);
    for (int i = 1; i < n; ++i) {
        const double a = std::exp(lw + i * step);
        const double f = fB(a);
        const double d = dfB(a);
        if ((f > 0.0) != (prev_f > 0.0) || f == 0.0) {
            out.roots.push_back(detail::polish_root(fB, dfB, prev_a, a, prev_f, 1e-12));
        } else if ((d > 0.0) != (prev_d > 0.0)) {
            // no net sign change but an interior extremum: either a pair of
            // close roots straddling it, a tangent root, or nothing
            const double ax = detail::polish_root(dfB,
                [&](double t) { return d2B_da2(m, Shape{t, b, c}); },
                prev_a, a, prev_d, 1e-12);
            const double fx = fB(ax);
            if ((fx > 0.0) != (prev_f > 0.0) && fx != 0.0) {
                out.roots.push_back(detail::polish_root(fB, dfB, prev_a, ax, prev_f, 1e-12));
                out.roots.push_back(detail::polish_root(fB, dfB, ax, a, fx, 1e-12));
            } else if (std::abs(fx) < 1e-11 * balance_scale(m, Shape{ax, b, c})) {
                out.roots.push_back(ax);
            }
        }
        prev_a = a;
        prev_f = f;
        prev_d = d;
    }

    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end(),
                                [](double u, double v) { return std::abs(u - v) <= 1e-9 * v; }),
                    out.roots.end());
    if (out.roots.size() > 2)
        throw std::runtime_error("roots_on_a_segment: more than two roots found");
    return out;
}

/// Collinear shape with body `middle` (0-based) between the other two,
/// parametrized by the ratio x of the two inner distances, unit inner gap.
inline Shape collinear_shape(int middle, double x) {
    const double sum2 = (1.0 + x) * (1.0 + x);
    switch (middle) {
        case 0: return Shape{sum2, x * x, 1.0};     // order 3,1,2: d13 = x, d12 = 1
        case 1: return Shape{x * x, sum2, 1.0};     // order 1,2,3: d12 = 1, d23 = x
        default: return Shape{1.0, x * x, sum2};    // order 1,3,2: d13 = x, d32 = 1
    }
}

/// The three collinear balanced shapes (Euler configurations), one per
/// choice of the middle body, normalized to c = 1. Each satisfies B = 0
/// and lies on the flat-triangle ellipse A^2 = 0 by construction.
inline std::array<Shape, 3> euler_points(const MassTriple& m) {
    std::array<Shape, 3> pts;
    for (int middle = 0; middle < 3; ++middle) {
        auto f = [&](double x) { return balance_determinant(m, collinear_shape(middle, x)); };
        auto df = [&](double x) {
            const Shape s = collinear_shape(middle, x);
            const Eigen::Vector3d g = balance_gradient(m, s);
            Eigen::Vector3d ds;
            const double dsum = 2.0 * (1.0 + x);
            switch (middle) {
                case 0: ds = {dsum, 2.0 * x, 0.0}; break;
                case 1: ds = {2.0 * x, dsum, 0.0}; break;
                default: ds = {0.0, 2.0 * x, dsum}; break;
            }
            return g.dot(ds);
        };
        const double lo = 1e-8, hi = 1e8;
        const int n = 16 * 64;
        double pa = lo, pf = f(pa), root = -1.0;
        for (int i = 1; i <= n; ++i) {
            const double x = lo * std::pow(hi / lo, double(i) / n);
            const double fx = f(x);
            if ((fx > 0.0) != (pf > 0.0) || fx == 0.0) {
                root = detail::polish_root(f, df, pa, x, pf, 1e-13);
                break;
            }
            pa = x;
            pf = fx;
        }
        if (root < 0.0)
            throw std::runtime_error("euler_points: no collinear root bracketed");
        Shape s = collinear_shape(middle, root);
        pts[middle] = Shape{s.a / s.c, s.b / s.c, 1.0};
    }
    return pts;
}

struct SpecialPoints {
    Shape lagrange;
    Shape round_inertia;
};

/// The Lagrange equilateral shape and the shape with a round tensor of
/// inertia, (a,b,c) ~ (m1(m2+m3), m2(m1+m3), m3(m1+m2)), both at c = 1.
inline SpecialPoints special_points(const MassTriple& m) {
    const double ra = m.m1 * (m.m2 + m.m3);
    const double rb = m.m2 * (m.m1 + m.m3);
    const double rc = m.m3 * (m.m1 + m.m2);
    return SpecialPoints{Shape{1.0, 1.0, 1.0}, Shape{ra / rc, rb / rc, 1.0}};
}

} // namespace b3b
