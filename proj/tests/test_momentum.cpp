#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <random>

#include "b3b/momentum.hpp"
#include "helpers.hpp"

using namespace b3b;
using testutil::rel_err;

namespace {
Eigen::Matrix4d random_antisymmetric(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            A(i, j) = u(g);
            A(j, i) = -A(i, j);
        }
    return A;
}
} // namespace

TEST_CASE("canonical block momenta") {
    Eigen::Matrix4d L = Eigen::Matrix4d::Zero();
    L(0, 1) = 2.0; L(1, 0) = -2.0;
    L(2, 3) = 1.0; L(3, 2) = -1.0;
    const auto am = momentum_invariants(L);
    CHECK(am.l2 == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(std::abs(am.pf) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(am.mu1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(am.mu2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(am.dL == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(am.rank == 4);
    CHECK(rel_err(am.mu1 * am.mu2 / ((am.mu1 + am.mu2) * (am.mu1 + am.mu2)), 2.0 / 9.0) < 1e-14);

    Eigen::Matrix4d L2 = Eigen::Matrix4d::Zero();
    L2(0, 1) = 1.0; L2(1, 0) = -1.0;
    const auto am2 = momentum_invariants(L2);
    CHECK(am2.l2 == doctest::Approx(1.0));
    CHECK(am2.pf == 0.0);
    CHECK(am2.rank == 2);
    CHECK(am2.mu2 == doctest::Approx(0.0));

    CHECK(momentum_invariants(Eigen::Matrix4d::Zero()).rank == 0);

    Eigen::Matrix4d bad = Eigen::Matrix4d::Identity();
    CHECK_THROWS_AS(momentum_invariants(bad), std::domain_error);
}

TEST_CASE("invariant identities on random antisymmetric matrices") {
    auto g = testutil::rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const Eigen::Matrix4d L = random_antisymmetric(g);
        const auto am = momentum_invariants(L);

        CHECK(am.l2 >= 2.0 * std::abs(am.pf) - 1e-12 * am.l2);
        const double sum = am.mu1 + am.mu2;
        CHECK(rel_err(sum * sum, am.l2 + 2.0 * std::abs(am.pf)) < 1e-10);
        CHECK(rel_err(am.pf * am.pf, L.determinant()) < 1e-10);

        // characteristic polynomial: det(L - t I) = t^4 + t^2 l2 + Pf^2
        for (double t : {0.7, -1.3, 2.1}) {
            const double det = (L - t * Eigen::Matrix4d::Identity()).determinant();
            const double poly = t * t * t * t + t * t * am.l2 + am.pf * am.pf;
            CHECK(rel_err(det, poly) < 1e-10);
        }

        // eigenvalue oracle: imaginary parts come in pairs +-mu1, +-mu2
        Eigen::EigenSolver<Eigen::Matrix4d> es(L, false);
        Eigen::Vector4d im = es.eigenvalues().imag().cwiseAbs();
        std::sort(im.data(), im.data() + 4);
        CHECK(rel_err(im[3], am.mu1) < 1e-10);
        CHECK(std::abs(im[0] - am.mu2) < 1e-10 * am.mu1);
    }
}

TEST_CASE("wedge norm identity") {
    auto g = testutil::rng(43);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::Vector4d a, b;
        for (int i = 0; i < 4; ++i) { a[i] = u(g); b[i] = u(g); }
        // |a^b|^2 from the explicit bivector components
        double w2 = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const double c = a[i] * b[j] - a[j] * b[i];
                w2 += c * c;
            }
        CHECK(rel_err(wedge_sq(a, b), w2) < 1e-12);
        CHECK(wedge_sq(a, 2.0 * a) == doctest::Approx(0.0));
    }
}
