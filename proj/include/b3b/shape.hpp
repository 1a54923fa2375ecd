#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "b3b/masses.hpp"

namespace b3b {

/// Thrown when a configuration degenerates to zero mutual distance.
struct collision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Squared mutual distances, a = d23^2, b = d13^2, c = d12^2.
/// The side index is the opposite body index.
struct Shape {
    double a, b, c;

    double operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
};

enum class ShapeClass { Triangle, Collinear, Nonphysical };

inline Shape make_shape(double a, double b, double c) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)))
        throw std::domain_error("make_shape: squared distances must be finite");
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
        throw std::domain_error("make_shape: squared distances must be positive");
    return Shape{a, b, c};
}

/// Scale all squared distances; lengths scale by sqrt(factor).
inline Shape scaled(const Shape& s, double factor) {
    return Shape{s.a * factor, s.b * factor, s.c * factor};
}

inline double moment_of_inertia(const MassTriple& m, const Shape& s) {
    return (m.m1 * m.m2 * s.c + m.m2 * m.m3 * s.a + m.m3 * m.m1 * s.b) / m.M;
}

/// Squared triangle area by Heron's formula in squared distances.
/// Positive inside the triangle inequality, zero on collinear shapes.
inline double squared_area(const Shape& s) {
    return (2.0 * s.a * s.c + 2.0 * s.a * s.b + 2.0 * s.b * s.c
            - s.a * s.a - s.b * s.b - s.c * s.c) / 16.0;
}

/// Roundoff band below zero that is still treated as collinear.
inline double squared_area_epsilon(const Shape& s) {
    const double q = (s.a + s.b + s.c) / 3.0;
    return 1e-14 * q * q;
}

inline ShapeClass classify(const Shape& s) {
    const double A2 = squared_area(s);
    if (A2 > 0.0) return ShapeClass::Triangle;
    if (A2 >= -squared_area_epsilon(s)) return ShapeClass::Collinear;
    return ShapeClass::Nonphysical;
}

inline double potential(const MassTriple& m, const Shape& s) {
    if (!(s.a > 0.0 && s.b > 0.0 && s.c > 0.0))
        throw collision_error("potential: zero mutual distance");
    return -m.m1 * m.m2 / std::sqrt(s.c)
           -m.m2 * m.m3 / std::sqrt(s.a)
           -m.m3 * m.m1 / std::sqrt(s.b);
}

/// Coordinates of the three bodies in the principal axes of inertia,
/// centre of mass at the origin. theta1 >= theta2 by convention, and
/// theta1 + theta2 equals the moment of inertia.
struct PlanarConfig {
    Eigen::Vector3d x, y;
    double theta1, theta2;
};

/// Realize a shape in the plane: body 1 and 2 on a provisional axis,
/// body 3 from its two distances, then translate to the centre of mass
/// and rotate into the axes of inertia. A shape with a round tensor of
/// inertia keeps the provisional axes.
inline PlanarConfig planar_coordinates(const MassTriple& m, const Shape& s) {
    double A2 = squared_area(s);
    if (A2 < 0.0) {
        if (A2 < -squared_area_epsilon(s))
            throw std::domain_error("planar_coordinates: shape violates the triangle inequality");
        A2 = 0.0;
    }
    const double sc = std::sqrt(s.c);

    Eigen::Vector3d x(0.0, sc, (s.b - s.a + s.c) / (2.0 * sc));
    Eigen::Vector3d y(0.0, 0.0, 2.0 * std::sqrt(A2) / sc);

    const Eigen::Vector3d mm(m.m1, m.m2, m.m3);
    x.array() -= mm.dot(x) / m.M;
    y.array() -= mm.dot(y) / m.M;

    // planar second-moment tensor
    const double pxx = mm.dot(x.cwiseProduct(x));
    const double pyy = mm.dot(y.cwiseProduct(y));
    const double pxy = mm.dot(x.cwiseProduct(y));

    const double tiny = 1e-13 * (pxx + pyy);
    if (std::abs(pxy) > tiny || std::abs(pxx - pyy) > tiny) {
        const double phi = 0.5 * std::atan2(2.0 * pxy, pxx - pyy);
        const double cp = std::cos(phi), sp = std::sin(phi);
        const Eigen::Vector3d xr = cp * x + sp * y;
        const Eigen::Vector3d yr = -sp * x + cp * y;
        x = xr;
        y = yr;
    }

    double t1 = mm.dot(x.cwiseProduct(x));
    double t2 = mm.dot(y.cwiseProduct(y));
    if (t1 < t2) {
        x.swap(y);
        std::swap(t1, t2);
    }
    return PlanarConfig{x, y, t1, std::max(t2, 0.0)};
}

/// Acute iff the largest squared side is less than the sum of the other two.
inline bool is_acute(const Shape& s) {
    return s.a < s.b + s.c && s.b < s.a + s.c && s.c < s.a + s.b;
}

} // namespace b3b
