#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace b3b {

/// A 4x4 antisymmetric angular momentum together with its invariants:
/// l2 = (1/2) Tr L L^t, the Pfaffian, the eigenvalue magnitudes
/// mu1 >= mu2 >= 0 from det(L - lambda I) = lambda^4 + lambda^2 l2 + Pf^2,
/// the collision-bound constant dL = min(mu1, mu2) and the rank.
struct AngularMomentum4 {
    Eigen::Matrix4d L;
    double l2 = 0.0;
    double pf = 0.0;   // signed Pfaffian
    double mu1 = 0.0, mu2 = 0.0;
    double dL = 0.0;
    int rank = 0;
};

inline double pfaffian(const Eigen::Matrix4d& L) {
    return L(0, 1) * L(2, 3) - L(0, 2) * L(1, 3) + L(0, 3) * L(1, 2);
}

inline AngularMomentum4 momentum_invariants(const Eigen::Matrix4d& L) {
    const double scale = L.cwiseAbs().maxCoeff();
    if ((L + L.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1e-300))
        throw std::domain_error("momentum_invariants: matrix is not antisymmetric");

    AngularMomentum4 am;
    am.L = L;
    am.l2 = 0.5 * L.squaredNorm();
    am.pf = pfaffian(L);

    const double apf = std::abs(am.pf);
    const double sum = std::sqrt(std::max(am.l2 + 2.0 * apf, 0.0));
    const double diff = std::sqrt(std::max(am.l2 - 2.0 * apf, 0.0));
    am.mu1 = 0.5 * (sum + diff);
    am.mu2 = 0.5 * (sum - diff);
    am.dL = am.mu2;

    if (am.mu1 <= 0.0)
        am.rank = 0;
    else
        am.rank = (am.mu2 > 1e-10 * am.mu1) ? 4 : 2;
    return am;
}

/// |u ^ v|^2 = |u|^2 |v|^2 - <u,v>^2 on the space of bivectors.
template <typename DerivedU, typename DerivedV>
double wedge_sq(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
    const double dot = u.dot(v);
    return u.squaredNorm() * v.squaredNorm() - dot * dot;
}

} // namespace b3b
