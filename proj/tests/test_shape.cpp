#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include "b3b/shape.hpp"
#include "helpers.hpp"

using namespace b3b;
using testutil::rel_err;

TEST_CASE("symmetric mass functions") {
    auto m = symmetric_mass_functions(1.0 / 3, 1.0 / 3, 1.0 / 3);
    CHECK(m.M == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.M2 == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(m.M3 == doctest::Approx(1.0 / 27).epsilon(1e-15));

    m = symmetric_mass_functions(3.0 / 6, 2.0 / 6, 1.0 / 6);
    CHECK(rel_err(m.M, 1.0) < 1e-15);
    CHECK(rel_err(m.M2, 11.0 / 36) < 1e-15);
    CHECK(rel_err(m.M3, 1.0 / 36) < 1e-15);

    m = symmetric_mass_functions(1.0, 1.0, 2.0);
    CHECK(m.M == 4.0);
    CHECK(m.M2 == 5.0);
    CHECK(m.M3 == 2.0);

    CHECK_THROWS_AS(symmetric_mass_functions(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(symmetric_mass_functions(1.0, -2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(symmetric_mass_functions(1.0, 1.0, std::nan("")), std::domain_error);
}

TEST_CASE("moment of inertia") {
    const auto meq = symmetric_mass_functions(1.0, 1.0, 1.0);
    CHECK(rel_err(moment_of_inertia(meq, {1, 1, 1}), 1.0) < 1e-15);

    const auto m = symmetric_mass_functions(0.5, 1.0 / 3, 1.0 / 6);
    CHECK(rel_err(moment_of_inertia(m, {1, 1, 1}), 11.0 / 36) < 1e-15);

    // homogeneity of degree 1 in the squared distances
    const Shape s{1.7, 0.4, 2.3};
    CHECK(rel_err(moment_of_inertia(m, scaled(s, 3.5)), 3.5 * moment_of_inertia(m, s)) < 1e-14);
}

TEST_CASE("squared area") {
    CHECK(rel_err(squared_area({1, 1, 1}), 3.0 / 16) < 1e-15);
    CHECK(squared_area({4, 1, 1}) == 0.0);
    CHECK(rel_err(squared_area({9, 1, 1}), -45.0 / 16) < 1e-15);

    CHECK(classify({1, 1, 1}) == ShapeClass::Triangle);
    CHECK(classify({4, 1, 1}) == ShapeClass::Collinear);
    CHECK(classify({9, 1, 1}) == ShapeClass::Nonphysical);

    const Shape s{1.7, 0.4, 2.3};
    CHECK(rel_err(squared_area(scaled(s, 2.0)), 4.0 * squared_area(s)) < 1e-14);
}

TEST_CASE("potential") {
    const auto meq = symmetric_mass_functions(2.0, 2.0, 2.0);
    CHECK(rel_err(potential(meq, {1, 1, 1}), -3.0 * 4.0) < 1e-15);

    // isosceles family potential, masses (1,1,mu) m, shape (s^2, s^2, rho^2 s^2)
    const double mu = 0.7, mm = 1.3, rho = 1.4, ss = 2.1;
    const auto miso = symmetric_mass_functions(mm, mm, mu * mm);
    const Shape siso{ss * ss, ss * ss, rho * rho * ss * ss};
    CHECK(rel_err(potential(miso, siso), -mm * mm * (1 + 2 * rho * mu) / (rho * ss)) < 1e-14);

    const auto m = symmetric_mass_functions(0.5, 1.0 / 3, 1.0 / 6);
    const Shape s{1.7, 0.4, 2.3};
    CHECK(rel_err(potential(m, scaled(s, 4.0)), 0.5 * potential(m, s)) < 1e-14);

    CHECK_THROWS_AS(potential(m, Shape{0.0, 1.0, 1.0}), collision_error);
}

TEST_CASE("permutation invariance of I, A2, V") {
    auto g = testutil::rng();
    std::uniform_real_distribution<double> u(0.2, 3.0);
    // permutations acting on bodies; sides follow the same index map
    const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                                   {0, 2, 1}, {1, 0, 2}, {2, 1, 0}}};
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = testutil::random_masses(g);
        const Shape s{u(g), u(g), u(g)};
        for (const auto& p : perms) {
            const auto mp = symmetric_mass_functions(m[p[0]], m[p[1]], m[p[2]]);
            const Shape sp{s[p[0]], s[p[1]], s[p[2]]};
            CHECK(rel_err(moment_of_inertia(mp, sp), moment_of_inertia(m, s)) < 1e-13);
            CHECK(rel_err(squared_area(sp), squared_area(s)) < 1e-13);
            CHECK(rel_err(potential(mp, sp), potential(m, s)) < 1e-13);
        }
    }
}

TEST_CASE("planar coordinates") {
    const auto meq = symmetric_mass_functions(1.0, 1.0, 1.0);
    auto pc = planar_coordinates(meq, {1, 1, 1});
    CHECK(rel_err(pc.theta1, 0.5 * moment_of_inertia(meq, {1, 1, 1})) < 1e-12);
    CHECK(rel_err(pc.theta2, pc.theta1) < 1e-10);

    // isosceles theta values, masses (1,1,mu) m, shape (s^2,s^2,rho^2 s^2)
    const double mu = 0.6, mm = 1.1, rho = 1.2, ss = 0.9;
    const auto miso = symmetric_mass_functions(mm, mm, mu * mm);
    pc = planar_coordinates(miso, {ss * ss, ss * ss, rho * rho * ss * ss});
    const double th_sym = mm * ss * ss * mu * (4 - rho * rho) / (2 * (2 + mu));
    const double th_base = 0.5 * mm * ss * ss * rho * rho;
    CHECK(rel_err(pc.theta1, std::max(th_sym, th_base)) < 1e-12);
    CHECK(rel_err(pc.theta2, std::min(th_sym, th_base)) < 1e-12);

    // a flat triangle has a vanishing second moment
    const auto m = symmetric_mass_functions(0.5, 1.0 / 3, 1.0 / 6);
    pc = planar_coordinates(m, {4, 1, 1});
    CHECK(pc.theta2 == doctest::Approx(0.0).epsilon(1e-14));

    CHECK_THROWS_AS(planar_coordinates(m, Shape{9, 1, 1}), std::domain_error);
}

TEST_CASE("planar coordinates invariants on random shapes") {
    auto g = testutil::rng(17);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    int physical = 0;
    while (physical < 200) {
        const auto m = testutil::random_masses(g);
        const Shape s{u(g), u(g), u(g)};
        if (classify(s) == ShapeClass::Nonphysical) continue;
        ++physical;
        const auto pc = planar_coordinates(m, s);
        const Eigen::Vector3d mm(m.m1, m.m2, m.m3);
        const double scale = std::sqrt((s.a + s.b + s.c) / 3.0);

        CHECK(std::abs(mm.dot(pc.x)) < 1e-12 * m.M * scale);
        CHECK(std::abs(mm.dot(pc.y)) < 1e-12 * m.M * scale);
        CHECK(std::abs(mm.dot(pc.x.cwiseProduct(pc.y))) < 1e-12 * m.M * scale * scale);
        CHECK(pc.theta1 >= pc.theta2);
        CHECK(rel_err(pc.theta1 + pc.theta2, moment_of_inertia(m, s)) < 1e-12);

        // mutual distances reproduce the shape
        auto d2 = [&](int i, int j) {
            const double dx = pc.x[i] - pc.x[j], dy = pc.y[i] - pc.y[j];
            return dx * dx + dy * dy;
        };
        CHECK(rel_err(d2(1, 2), s.a) < 1e-12);
        CHECK(rel_err(d2(0, 2), s.b) < 1e-12);
        CHECK(rel_err(d2(0, 1), s.c) < 1e-12);

        // Lemma C identity: A^2 = M theta1 theta2 / (4 M3)
        CHECK(std::abs(squared_area(s) - m.M * pc.theta1 * pc.theta2 / (4.0 * m.M3))
              < 1e-10 * std::max(1.0, std::abs(squared_area(s))) * scale * scale * scale * scale
                + 1e-10 * std::abs(squared_area(s)));
    }
}

TEST_CASE("acute classification") {
    CHECK(is_acute({1, 1, 1}));
    CHECK_FALSE(is_acute({2, 1, 1}));        // right angle: a = b + c
    CHECK_FALSE(is_acute({2.5, 1.0, 1.0}));  // obtuse
    CHECK(is_acute({1.9, 1.0, 1.0}));
}
