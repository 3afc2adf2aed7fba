// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#include <doctest.h>

#include <cmath>

#include "irsfso/geometry.hpp"
#include "irsfso/rng.hpp"

using namespace irsfso;

TEST_CASE("rotation matrix matches the printed entries") {
    // theta_p = pi/2, phi_p = 0: axis-aligned columns.
    const auto r = rotation_matrix(kPi / 2, 0.0);
    CHECK(r(0, 0) == doctest::Approx(1.0));
    CHECK(r(1, 1) == doctest::Approx(1.0));
    CHECK(r(2, 2) == doctest::Approx(1.0));
    CHECK(std::abs(r(0, 1)) < 1e-15);
    CHECK(std::abs(r(2, 0)) < 1e-15);

    // theta_p = 0, phi_p = pi: first column [0, 0, -1]^T.
    const auto r2 = rotation_matrix(0.0, kPi);
    CHECK(std::abs(r2(0, 0)) < 1e-15);
    CHECK(std::abs(r2(1, 0)) < 1e-15);
    CHECK(r2(2, 0) == doctest::Approx(-1.0));
}

TEST_CASE("rotation matrices are orthonormal with unit determinant") {
    Rng rng(42);
    for (int i = 0; i < 10000; ++i) {
        const double th = rng.next_unit() * kPi;
        const double ph = (rng.next_unit() - 0.5) * 4.0 * kPi;
        const auto r = rotation_matrix(th, ph);
        const Eigen::Matrix3d gram = r.transpose() * r;
        CHECK((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
    }
}

TEST_CASE("lens_to_global preserves the augmented norm") {
    LinkGeometryd geom;
    geom.d_p = 220.0;

    geom.theta_p = kPi / 2;
    geom.phi_p = kPi;
    auto p = lens_to_global<double>({0.0, 0.0}, geom);
    CHECK(p.norm() == doctest::Approx(220.0).epsilon(1e-14));

    geom.theta_p = 0.1;
    p = lens_to_global<double>({0.05, 0.0}, geom);
    CHECK(p.norm() == doctest::Approx(std::sqrt(0.05 * 0.05 + 220.0 * 220.0)).epsilon(1e-14));

    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        geom.theta_p = rng.next_unit() * kPi / 2;
        geom.phi_p = rng.next_unit() * 2.0 * kPi;
        const Eigen::Vector2d rp(rng.next_normal(), rng.next_normal());
        const double expect = std::sqrt(rp.squaredNorm() + geom.d_p * geom.d_p);
        CHECK(lens_to_global<double>(rp, geom).norm() == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("equivalent square has the lens area") {
    CHECK(equivalent_square_half_side(0.1) == doctest::Approx(0.08862269254).epsilon(1e-9));
    CHECK(equivalent_square_half_side(0.0) == 0.0);
    CHECK(equivalent_square_half_side(2.0 / std::sqrt(kPi)) == doctest::Approx(1.0));

    const double a = 0.37;
    const double half = equivalent_square_half_side(a);
    CHECK(4.0 * half * half == doctest::Approx(kPi * a * a).epsilon(1e-15));
}

TEST_CASE("geometry invariants are enforced") {
    LinkGeometryd geom;
    CHECK_NOTHROW(geom.validate());
    geom.d_l = -1.0;
    CHECK_THROWS_AS(geom.validate(), std::invalid_argument);
    geom.d_l = 200.0;
    geom.theta_l = 0.0;
    CHECK_THROWS_AS(geom.validate(), std::invalid_argument);
}
