#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "b3b/masses.hpp"
#include "b3b/momentum.hpp"
#include "b3b/shape.hpp"

namespace b3b {

using Bodies = Eigen::Matrix<double, 4, 3>;  // one column per body

/// Positions and conjugate momenta of the three bodies in R^4,
/// centre of mass at the origin and vanishing total momentum.
struct PhaseState {
    Bodies q = Bodies::Zero();
    Bodies p = Bodies::Zero();
};

inline Shape shape_of(const PhaseState& st) {
    return Shape{(st.q.col(1) - st.q.col(2)).squaredNorm(),
                 (st.q.col(0) - st.q.col(2)).squaredNorm(),
                 (st.q.col(0) - st.q.col(1)).squaredNorm()};
}

inline double kinetic_energy(const MassTriple& m, const PhaseState& st) {
    return 0.5 * (st.p.col(0).squaredNorm() / m.m1
                  + st.p.col(1).squaredNorm() / m.m2
                  + st.p.col(2).squaredNorm() / m.m3);
}

inline double potential_energy(const MassTriple& m, const PhaseState& st) {
    return potential(m, shape_of(st));
}

inline double hamiltonian(const MassTriple& m, const PhaseState& st) {
    return kinetic_energy(m, st) + potential_energy(m, st);
}

/// Newtonian accelerations q_i'' = sum_j m_j (q_j - q_i)/d_ij^3.
inline Bodies accelerations(const MassTriple& m, const Bodies& q) {
    Bodies acc = Bodies::Zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const Eigen::Vector4d d = q.col(j) - q.col(i);
            const double r2 = d.squaredNorm();
            if (r2 <= 0.0) throw collision_error("accelerations: coincident bodies");
            const Eigen::Vector4d g = d / (r2 * std::sqrt(r2));
            acc.col(i) += m[j] * g;
            acc.col(j) -= m[i] * g;
        }
    }
    return acc;
}

inline Eigen::Matrix4d body_angular_momentum(const PhaseState& st) {
    Eigen::Matrix4d L = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 3; ++i)
        L += st.q.col(i) * st.p.col(i).transpose() - st.p.col(i) * st.q.col(i).transpose();
    return L;
}

/// Jacobi vectors for the pairing (i, j | third): q joins the pair,
/// Q joins the third body to the pair's centre of mass.
struct JacobiDecomposition {
    Eigen::Vector4d q, Q;   // relative positions
    Eigen::Vector4d p, P;   // conjugate momenta mu_red qdot, nu_red Qdot
    double mu_red, nu_red;
};

inline JacobiDecomposition jacobi_vectors(const MassTriple& m, const PhaseState& st,
                                          int third = 2) {
    if (third < 0 || third > 2)
        throw std::domain_error("jacobi_vectors: body index out of range");
    const int i = (third == 0) ? 1 : 0;
    const int j = (third == 2) ? 1 : 2;
    const double mi = m[i], mj = m[j], mk = m[third];

    JacobiDecomposition jd;
    jd.mu_red = mi * mj / (mi + mj);
    jd.nu_red = mk * (mi + mj) / m.M;
    jd.q = st.q.col(j) - st.q.col(i);
    jd.Q = st.q.col(third) - (mi * st.q.col(i) + mj * st.q.col(j)) / (mi + mj);
    const Eigen::Vector4d vi = st.p.col(i) / mi;
    const Eigen::Vector4d vj = st.p.col(j) / mj;
    const Eigen::Vector4d vk = st.p.col(third) / mk;
    jd.p = jd.mu_red * (vj - vi);
    jd.P = jd.nu_red * (vk - (mi * vi + mj * vj) / (mi + mj));
    return jd;
}

inline double jacobi_kinetic(const JacobiDecomposition& jd) {
    return 0.5 * (jd.p.squaredNorm() / jd.mu_red + jd.P.squaredNorm() / jd.nu_red);
}

inline Eigen::Matrix4d jacobi_angular_momentum(const JacobiDecomposition& jd) {
    return jd.q * jd.p.transpose() - jd.p * jd.q.transpose()
           + jd.Q * jd.P.transpose() - jd.P * jd.Q.transpose();
}

/// Angular momentum of a zero-total-momentum state, evaluated through the
/// Jacobi vectors.
inline Eigen::Matrix4d angular_momentum(const MassTriple& m, const PhaseState& st) {
    const double pscale = st.p.cwiseAbs().maxCoeff();
    if (st.p.rowwise().sum().cwiseAbs().maxCoeff() > 1e-6 * std::max(pscale, 1e-300))
        throw std::domain_error("angular_momentum: total momentum is not zero");
    return jacobi_angular_momentum(jacobi_vectors(m, st));
}

} // namespace b3b
