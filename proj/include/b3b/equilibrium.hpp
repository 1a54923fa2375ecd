#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "b3b/balance.hpp"
#include "b3b/momentum.hpp"
#include "b3b/shape.hpp"
#include "b3b/state.hpp"

namespace b3b {

/// Squared frequencies of the two rotation planes solving the relative
/// equilibrium equations on a balanced planar configuration, with the
/// worst per-body residual relative to the acceleration scale.
struct Frequencies {
    double omega1_sq, omega2_sq;
    double residual;
};

inline Frequencies frequencies(const MassTriple& m, const PlanarConfig& pc) {
    const Eigen::Vector3d mm(m.m1, m.m2, m.m3);

    Eigen::Matrix<double, 3, 2> F = Eigen::Matrix<double, 3, 2>::Zero();
    double fscale = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const double dx = pc.x[j] - pc.x[i];
            const double dy = pc.y[j] - pc.y[i];
            const double d2 = dx * dx + dy * dy;
            if (d2 <= 0.0) throw collision_error("frequencies: coincident bodies");
            const double inv3 = 1.0 / (d2 * std::sqrt(d2));
            F(i, 0) += mm[i] * mm[j] * dx * inv3;
            F(i, 1) += mm[i] * mm[j] * dy * inv3;
        }
        fscale = std::max(fscale, F.row(i).norm() / mm[i]);
    }

    const double inertia = pc.theta1 + pc.theta2;
    if (pc.theta1 <= 1e-15 * inertia)
        throw std::domain_error("frequencies: degenerate axis, zero extent");

    // solve each axis with the body of largest coordinate
    int jx = 0;
    pc.x.cwiseAbs().maxCoeff(&jx);
    const double w1sq = -F(jx, 0) / (mm[jx] * pc.x[jx]);

    double w2sq;
    const bool collinear = pc.theta2 <= 1e-12 * inertia;
    if (collinear) {
        // flat configuration: the y-equations are 0 = 0 and the frequency is
        // fixed by continuity through the trace identity
        // w1^2 + w2^2 = sum_{i<j} (m_i + m_j) d_ij^{-3}
        double tr = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const double dx = pc.x[j] - pc.x[i];
                const double dy = pc.y[j] - pc.y[i];
                const double d2 = dx * dx + dy * dy;
                tr += (mm[i] + mm[j]) / (d2 * std::sqrt(d2));
            }
        w2sq = tr - w1sq;
    } else {
        int jy = 0;
        pc.y.cwiseAbs().maxCoeff(&jy);
        w2sq = -F(jy, 1) / (mm[jy] * pc.y[jy]);
    }

    double res = 0.0;
    for (int i = 0; i < 3; ++i) {
        res = std::max(res, std::abs(F(i, 0) / mm[i] + w1sq * pc.x[i]));
        if (!collinear)
            res = std::max(res, std::abs(F(i, 1) / mm[i] + w2sq * pc.y[i]));
    }

    const double wscale = std::abs(w1sq) + std::abs(w2sq);
    if (w1sq < -1e-12 * wscale || w2sq < -1e-12 * wscale)
        throw std::domain_error("frequencies: negative squared frequency, shape not balanced");

    return Frequencies{std::max(w1sq, 0.0), std::max(w2sq, 0.0),
                       fscale > 0.0 ? res / fscale : res};
}

/// A balanced shape lifted to a relative equilibrium in R^2 + R^2.
/// Axis i of inertia rotates in plane i with angular velocity omega_i > 0;
/// the pairs (theta_i, omega_i, mu_i) are jointly ordered so mu1 >= mu2.
struct BalancedEquilibrium {
    MassTriple masses;
    Shape shape;             // squared distances including the scale factor
    double scale = 1.0;      // length factor applied to the input shape
    PlanarConfig planar;
    double omega1 = 0.0, omega2 = 0.0;
    double mu1 = 0.0, mu2 = 0.0;
    double kinetic = 0.0, potential = 0.0, hamiltonian = 0.0;
    double releq_residual = 0.0;
    int momentum_rank = 0;
};

inline BalancedEquilibrium lift(const MassTriple& m, const Shape& s, double scale = 1.0) {
    if (!(scale > 0.0)) throw std::domain_error("lift: scale must be positive");
    BalancedEquilibrium eq;
    eq.masses = m;
    eq.shape = scaled(s, scale * scale);
    eq.scale = scale;
    eq.planar = planar_coordinates(m, eq.shape);

    const Frequencies fr = frequencies(m, eq.planar);
    if (fr.residual > 1e-8)
        throw std::domain_error("lift: shape is not balanced");
    eq.releq_residual = fr.residual;

    eq.omega1 = std::sqrt(fr.omega1_sq);
    eq.omega2 = std::sqrt(fr.omega2_sq);
    eq.mu1 = eq.planar.theta1 * eq.omega1;
    eq.mu2 = eq.planar.theta2 * eq.omega2;
    if (eq.mu2 > eq.mu1) {
        eq.planar.x.swap(eq.planar.y);
        std::swap(eq.planar.theta1, eq.planar.theta2);
        std::swap(eq.omega1, eq.omega2);
        std::swap(eq.mu1, eq.mu2);
    }

    eq.kinetic = 0.5 * (eq.planar.theta1 * eq.omega1 * eq.omega1
                        + eq.planar.theta2 * eq.omega2 * eq.omega2);
    eq.potential = b3b::potential(m, eq.shape);
    eq.hamiltonian = eq.kinetic + eq.potential;
    eq.momentum_rank = eq.mu1 <= 0.0 ? 0 : (eq.mu2 > 1e-10 * eq.mu1 ? 4 : 2);
    return eq;
}

/// Place the equilibrium into R^4 at torus phase (theta1, theta2):
/// axis 1 rotated by theta1 in the first plane, axis 2 by theta2 in the
/// second, with the uniform counterclockwise velocities.
inline PhaseState embed_R4(const BalancedEquilibrium& eq, double th1 = 0.0, double th2 = 0.0) {
    PhaseState st;
    const double c1 = std::cos(th1), s1 = std::sin(th1);
    const double c2 = std::cos(th2), s2 = std::sin(th2);
    for (int i = 0; i < 3; ++i) {
        const double x = eq.planar.x[i], y = eq.planar.y[i];
        st.q.col(i) << x * c1, x * s1, y * c2, y * s2;
        const Eigen::Vector4d v(-x * eq.omega1 * s1, x * eq.omega1 * c1,
                                -y * eq.omega2 * s2, y * eq.omega2 * c2);
        st.p.col(i) = eq.masses[i] * v;
    }
    return st;
}

/// Scale-invariant energy-momentum pair, h = H (mu1 + mu2)^2 and
/// k = mu1 mu2 / (mu1 + mu2)^2 in [0, 1/4].
struct EMPoint {
    double h, k;
};

inline EMPoint scaled_energy_momentum(const BalancedEquilibrium& eq) {
    const double sum = eq.mu1 + eq.mu2;
    if (sum <= 0.0)
        throw std::domain_error("scaled_energy_momentum: zero total angular momentum");
    return EMPoint{eq.hamiltonian * sum * sum, eq.mu1 * eq.mu2 / (sum * sum)};
}

} // namespace b3b
