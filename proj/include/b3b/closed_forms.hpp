#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "b3b/equilibrium.hpp"
#include "b3b/shape.hpp"
#include "b3b/state.hpp"

namespace b3b {

/// Image of the equilateral (Lagrange) family in the energy-momentum map:
/// the vertical segment h = h_L, k in [0, k_max].
struct EquilateralFamily {
    double h_L;
    double k_max;
};

inline EquilateralFamily equilateral_family(const MassTriple& m) {
    return EquilateralFamily{-0.5 * m.M2 * m.M2 * m.M2 / m.M,
                             0.75 * m.M3 * m.M / (m.M2 * m.M2)};
}

/// Antisymmetric J with J^2 = -I built from a unit vector (u1, u2, u3);
/// the square of any rotation generator of this family is -omega^2 I.
inline Eigen::Matrix4d complex_structure(const Eigen::Vector3d& u) {
    if (std::abs(u.squaredNorm() - 1.0) > 1e-14)
        throw std::domain_error("complex_structure: u must have unit norm");
    Eigen::Matrix4d J;
    J << 0.0, -u[0], -u[1], -u[2],
         u[0], 0.0, u[2], -u[1],
         u[1], -u[2], 0.0, u[0],
         u[2], u[1], -u[0], 0.0;
    return J;
}

/// Equilateral triangle of side r in the (e1, e2) plane, rotating with
/// Omega = omega J, omega^2 = M / r^3.
inline PhaseState equilateral_embedding(const MassTriple& m, double r,
                                        const Eigen::Vector3d& u) {
    if (!(r > 0.0)) throw std::domain_error("equilateral_embedding: side must be positive");
    const Eigen::Matrix4d J = complex_structure(u);
    const double omega = std::sqrt(m.M / (r * r * r));
    const PlanarConfig pc = planar_coordinates(m, Shape{r * r, r * r, r * r});

    PhaseState st;
    for (int i = 0; i < 3; ++i) {
        st.q.col(i) << pc.x[i], pc.y[i], 0.0, 0.0;
        st.p.col(i) = m[i] * omega * (J * st.q.col(i));
    }
    return st;
}

/// Isosceles family for masses (1, 1, mu) m: single side d12 = rho s,
/// repeated sides d13 = d23 = s, with rho in (0, 2).
struct IsoscelesParams {
    double rho;
    double mu;
    double m = 1.0;
    double s = 1.0;
};

inline void validate(const IsoscelesParams& p) {
    if (!(p.rho > 0.0 && p.rho < 2.0))
        throw std::domain_error("isosceles: rho must lie in (0, 2)");
    if (!(p.mu > 0.0 && p.m > 0.0 && p.s > 0.0))
        throw std::domain_error("isosceles: mu, m, s must be positive");
}

/// chi = mu1/mu2 = (4 - rho^2) mu / sqrt(rho (2 + mu) (2 + rho^3 mu)),
/// strictly decreasing on (0, 2). Evaluated in log form near rho = 0.
inline double isosceles_chi(const IsoscelesParams& p) {
    validate(p);
    const double num = (4.0 - p.rho * p.rho) * p.mu;
    if (p.rho < 1e-6)
        return std::exp(std::log(num)
                        - 0.5 * (std::log(p.rho) + std::log(2.0 + p.mu)
                                 + std::log1p(0.5 * p.rho * p.rho * p.rho * p.mu) + std::log(2.0)));
    return num / std::sqrt(p.rho * (2.0 + p.mu) * (2.0 + p.rho * p.rho * p.rho * p.mu));
}

/// h(rho) = -(1/8) m^5 (1 + 2 rho mu)(2 + rho^3 mu)(1 + chi)^2,
/// k(rho) = 1 / (2 + chi + 1/chi).
inline EMPoint isosceles_hk(const IsoscelesParams& p) {
    const double chi = isosceles_chi(p);
    const double m5 = std::pow(p.m, 5);
    const double r3 = p.rho * p.rho * p.rho;
    return EMPoint{-0.125 * m5 * (1.0 + 2.0 * p.rho * p.mu) * (2.0 + r3 * p.mu)
                       * (1.0 + chi) * (1.0 + chi),
                   1.0 / (2.0 + chi + 1.0 / chi)};
}

inline Shape isosceles_shape(const IsoscelesParams& p) {
    validate(p);
    const double s2 = p.s * p.s;
    return Shape{s2, s2, p.rho * p.rho * s2};
}

/// Explicit relative equilibrium of the isosceles family: positions on the
/// axes (e2, e4), gamma = sqrt(4/rho^2 - 1) / (2 (1 + 2/mu)), frequencies
/// omega1^2 = m (mu + 2)/s^3 and omega2^2 = m (mu/s^3 + 2/(rho s)^3).
struct IsoscelesEmbedding {
    BalancedEquilibrium eq;
    PhaseState state;
};

inline IsoscelesEmbedding isosceles_embedding(const IsoscelesParams& p) {
    validate(p);
    const double rho = p.rho, mu = p.mu, mm = p.m, s = p.s;
    const double gamma = std::sqrt(4.0 / (rho * rho) - 1.0) / (2.0 * (1.0 + 2.0 / mu));
    const double rs = rho * s;
    const double s3 = s * s * s;

    const double w1sq = mm * (mu + 2.0) / s3;
    const double w2sq = mm * (mu / s3 + 2.0 / (rs * rs * rs));
    const double th1 = mm * s * s * mu * (4.0 - rho * rho) / (2.0 * (2.0 + mu));
    const double th2 = 0.5 * mm * s * s * rho * rho;

    BalancedEquilibrium eq;
    eq.masses = symmetric_mass_functions(mm, mm, mu * mm);
    eq.shape = Shape{s * s, s * s, rs * rs};
    eq.scale = 1.0;
    eq.planar.x = Eigen::Vector3d(-gamma, -gamma, 2.0 * gamma / mu) * rs;
    eq.planar.y = Eigen::Vector3d(-0.5, 0.5, 0.0) * rs;
    eq.planar.theta1 = th1;
    eq.planar.theta2 = th2;
    eq.omega1 = std::sqrt(w1sq);
    eq.omega2 = std::sqrt(w2sq);
    eq.mu1 = th1 * eq.omega1;
    eq.mu2 = th2 * eq.omega2;
    if (eq.mu2 > eq.mu1) {
        eq.planar.x.swap(eq.planar.y);
        std::swap(eq.planar.theta1, eq.planar.theta2);
        std::swap(eq.omega1, eq.omega2);
        std::swap(eq.mu1, eq.mu2);
    }
    eq.kinetic = 0.5 * (th1 * w1sq + th2 * w2sq);
    eq.potential = -mm * mm * (1.0 + 2.0 * rho * mu) / rs;
    eq.hamiltonian = eq.kinetic + eq.potential;
    eq.momentum_rank = eq.mu2 > 1e-10 * eq.mu1 ? 4 : (eq.mu1 > 0.0 ? 2 : 0);

    // positions on the second and fourth coordinate axes, velocities from
    // Omega = blockdiag(omega1 J2, omega2 J2)
    const Eigen::Vector3d ex = Eigen::Vector3d(-gamma, -gamma, 2.0 * gamma / mu) * rs;
    const Eigen::Vector3d ey = Eigen::Vector3d(-0.5, 0.5, 0.0) * rs;
    const double w1 = std::sqrt(w1sq), w2 = std::sqrt(w2sq);
    PhaseState st;
    for (int i = 0; i < 3; ++i) {
        st.q.col(i) << 0.0, ex[i], 0.0, ey[i];
        const Eigen::Vector4d v(-w1 * ex[i], 0.0, -w2 * ey[i], 0.0);
        st.p.col(i) = eq.masses[i] * v;
    }
    return IsoscelesEmbedding{eq, st};
}

/// Endpoint of the Lagrange family for masses (1, 1, mu) m, where the
/// isosceles family at rho = 1 attaches:
/// (k, h) = (3 mu (2+mu) / (4 (1+2mu)^2), -m^5 (1+2mu)^3 / (2 (2+mu))).
inline EMPoint lagrange_junction(double mu, double m = 1.0) {
    if (!(mu > 0.0 && m > 0.0))
        throw std::domain_error("lagrange_junction: mu and m must be positive");
    const double m5 = std::pow(m, 5);
    const double q = 1.0 + 2.0 * mu;
    return EMPoint{-m5 * q * q * q / (2.0 * (2.0 + mu)),
                   3.0 * mu * (2.0 + mu) / (4.0 * q * q)};
}

} // namespace b3b
