// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#include <doctest.h>

#include <cmath>

#include "irsfso/beam.hpp"
#include "irsfso/delay.hpp"
#include "irsfso/irs.hpp"
#include "irsfso/rng.hpp"

using namespace irsfso;

namespace {

LinkGeometryd desk_geometry(double theta_p = 0.1) {
    LinkGeometryd g;
    g.theta_p = theta_p;
    return g; // 200 m / 220 m, theta_l = pi/2, phi_p = pi defaults
}

} // namespace

TEST_CASE("linear phase profile slopes") {
    LinkGeometryd g = desk_geometry(kPi / 2);
    auto p = linear_phase_profile(g);
    CHECK(std::abs(p.slope_x) < 1e-15); // retro-symmetric mirror case
    CHECK(std::abs(p.slope_y) < 1e-15);

    g.theta_p = 0.1;
    p = linear_phase_profile(g);
    CHECK(p.slope_x == doctest::Approx(-std::cos(0.1)).epsilon(1e-12));
    CHECK(std::abs(p.slope_y) < 1e-15);

    // phi_l = 0, phi_p = pi keeps the y slope zero for any elevations.
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        g.theta_l = 0.1 + 1.4 * rng.next_unit();
        g.theta_p = 1.5 * rng.next_unit();
        CHECK(std::abs(linear_phase_profile(g).slope_y) < 1e-15);
    }
}

TEST_CASE("profile cancels the linear phase of the reflected beam") {
    // Total phase psi_in + psi_out + phi_irs must be stationary in its
    // linear terms at the IRS center for the on-axis lens point.
    LinkGeometryd g = desk_geometry(0.7);
    g.theta_l = 1.2;
    const BeamParamsd beam{};
    const auto at = beam_at_distance(beam, g.d_l, g.theta_l);
    const auto profile = linear_phase_profile(g);
    const double k = beam.wavenumber();

    const Eigen::Vector3d r_o = lens_to_global<double>({0.0, 0.0}, g);
    auto total_phase = [&](double x, double y) {
        const auto in = incident_field(x, y, beam, at, g.d_l, g.theta_l);
        const double dist = (r_o - Eigen::Vector3d(x, y, 0.0)).norm();
        return in.phase + k * dist + profile.phase(k, x, y);
    };
    const double h = 1e-4;
    const double dx = (total_phase(h, 0.0) - total_phase(-h, 0.0)) / (2.0 * h);
    const double dy = (total_phase(0.0, h) - total_phase(0.0, -h)) / (2.0 * h);
    // Linear coefficients are ~k = 4e6 rad/m before compensation; after the
    // profile they collapse by six orders of magnitude (quadratic terms
    // contribute O(k h^2 / R) to the stencil).
    CHECK(std::abs(dx) < 1e-4 * k);
    CHECK(std::abs(dy) < 1e-4 * k);
}

TEST_CASE("linear delay slopes and the worked 3.3 ns spread") {
    LinkGeometryd g;
    g.theta_l = kPi / 2;
    g.phi_l = 0.0;
    g.theta_p = 0.0;
    g.phi_p = kPi;
    const auto p = delay_linear(g);
    CHECK(p.a1 == doctest::Approx(1.0 / 3e8).epsilon(1e-12));
    CHECK(std::abs(p.a2) < 1e-20);
    CHECK(p.tau_los == doctest::Approx(1.4e-6).epsilon(1e-12));

    IrsParamsd irs; // 1 m x 1 m
    CHECK(delay_spread(p, irs) == doctest::Approx(3.3333333e-9).epsilon(1e-6));

    // theta_l = theta_p in-plane: non-dispersive.
    g.theta_p = 0.9;
    g.theta_l = 0.9;
    CHECK(std::abs(delay_linear(g).a1) < 1e-24);

    g.theta_l = kPi / 2;
    g.theta_p = 0.1;
    CHECK(delay_linear(g).a1 == doctest::Approx(std::cos(0.1) / 3e8).epsilon(1e-12));
}

TEST_CASE("in-plane reduction a1 = (cos theta_p - cos theta_l)/v_l") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        LinkGeometryd g;
        g.theta_l = 0.1 + 1.4 * rng.next_unit();
        g.theta_p = 1.5 * rng.next_unit();
        const double expect = (std::cos(g.theta_p) - std::cos(g.theta_l)) / g.v_l;
        CHECK(delay_linear(g).a1 == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("affine spread equals grid max minus min") {
    Rng rng(23);
    IrsParamsd irs;
    for (int trial = 0; trial < 1000; ++trial) {
        LinkGeometryd g;
        g.theta_l = 0.1 + 1.45 * rng.next_unit();
        g.theta_p = 1.5 * rng.next_unit();
        g.phi_l = 0.0;
        g.phi_p = rng.next_unit() * 2.0 * kPi;
        irs.length_x = 0.2 + rng.next_unit();
        irs.length_y = 0.2 + rng.next_unit();
        const auto p = delay_linear(g);
        const double closed = delay_spread(p, irs);

        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < 101; ++i)
            for (int j = 0; j < 101; ++j) {
                const double x = irs.length_x * (i / 100.0 - 0.5);
                const double y = irs.length_y * (j / 100.0 - 0.5);
                const double t = p(x, y);
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
        CHECK(closed == doctest::Approx(hi - lo).epsilon(1e-12));
    }
}

TEST_CASE("quadratic profile reduces to the linear one plus bounded curvature") {
    LinkGeometryd g = desk_geometry(0.1);
    const BeamParamsd beam{};
    const auto at = beam_at_distance(beam, g.d_l, g.theta_l);
    const Eigen::Vector3d lens_center = lens_to_global<double>({0.0, 0.0}, g);
    const auto quad = delay_quadratic(g, beam, at, lens_center);
    const auto lin = delay_linear(g, beam, at);

    CHECK(quad.a1 == doctest::Approx(lin.a1).epsilon(1e-12));
    CHECK(std::abs(quad.a2 - lin.a2) < 1e-20);
    CHECK(quad(0.0, 0.0) == doctest::Approx(quad.tau0).epsilon(1e-15));
    CHECK((quad.B - quad.B.transpose()).cwiseAbs().maxCoeff() < 1e-25);

    IrsParamsd irs;
    const double bound = quad.B.cwiseAbs().maxCoeff() *
                         std::max(irs.length_x, irs.length_y) *
                         std::max(irs.length_x, irs.length_y);
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            const double x = irs.length_x * (i / 10.0 - 0.5);
            const double y = irs.length_y * (j / 10.0 - 0.5);
            CHECK(std::abs(quad(x, y) - lin(x, y)) <= 2.0 * bound);
        }
}

TEST_CASE("on-axis observation point gives a diagonal quadratic form") {
    LinkGeometryd g = desk_geometry(0.3);
    const BeamParamsd beam{};
    const auto at = beam_at_distance(beam, g.d_l, g.theta_l);
    const auto quad = delay_quadratic(g, beam, at, Eigen::Vector3d(0.0, 0.0, g.d_p));
    CHECK(quad.c.cwiseAbs().maxCoeff() < 1e-20); // theta_l = pi/2: b = 0 too
    CHECK(quad.B(0, 1) == 0.0);
    CHECK(quad.B(0, 0) ==
          doctest::Approx((0.5 / g.d_p + 0.5 / at.R_x) / g.v_l).epsilon(1e-12));
    CHECK(quad.B(1, 1) ==
          doctest::Approx((0.5 / g.d_p + 0.5 / at.R_y) / g.v_l).epsilon(1e-12));
}

TEST_CASE("non-dispersive threshold reproduces 1.54 rad") {
    const double th = nondispersive_theta_p_threshold(0.1e-9, 1.0, kPi / 2);
    CHECK(std::abs(th - 1.54) < 0.01);
    CHECK(th == doctest::Approx(std::acos(0.03)).epsilon(1e-12));
}

TEST_CASE("fresnel regime report") {
    LinkGeometryd g = desk_geometry(0.1);
    const BeamParamsd beam{};
    const auto at = beam_at_distance(beam, g.d_l, g.theta_l);
    IrsParamsd irs;

    auto rep = fresnel_check(g, irs, at, beam.lambda);
    // i_e set by the beam footprint: d_f ~ 6.3 km, far above d_p = 220 m.
    CHECK(rep.x_e == doctest::Approx(at.w_x));
    CHECK(rep.d_f == doctest::Approx((rep.x_e * rep.x_e + rep.y_e * rep.y_e) /
                                     (2.0 * beam.lambda)));
    CHECK(rep.d_f > 6e3);
    CHECK(!rep.fresnel_ok);
    CHECK(!rep.warnings.empty());
    CHECK(rep.linear_lens_ok);
    CHECK(rep.linear_irs_ok);

    // Tiny panel: always valid.
    irs.length_x = irs.length_y = 1e-4;
    const auto at2 = beam_at_distance(beam, 2.0, g.theta_l); // narrow footprint
    rep = fresnel_check(g, irs, at2, beam.lambda);
    CHECK(rep.fresnel_ok);

    // x_e = y_e = sqrt(lambda) gives d_f = 1.
    IrsParamsd irs3;
    irs3.length_x = irs3.length_y = 2.0 * std::sqrt(beam.lambda);
    BeamAtIrsd at3 = at;
    at3.w_x = at3.w_y = 10.0; // footprint not binding
    rep = fresnel_check(g, irs3, at3, beam.lambda);
    CHECK(rep.d_f == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bulk delay conventions differ only by the Gouy term") {
    LinkGeometryd g = desk_geometry(0.1);
    const BeamParamsd beam{};
    const auto at = beam_at_distance(beam, g.d_l, g.theta_l);
    const double a = bulk_delay(g, beam, at, Tau0Convention::GouyOverK);
    const double b = bulk_delay(g, beam, at, Tau0Convention::PaperLiteral);
    CHECK(std::abs(a - 1.4e-6) < 1e-14);           // correction ~1e-15 s
    CHECK(b == doctest::Approx(1.4e-6 - at.psi0 / g.v_l).epsilon(1e-12));
}

TEST_CASE("quadratic delay spread falls back to a grid search") {
    LinkGeometryd g = desk_geometry(0.3);
    const BeamParamsd beam{};
    const auto at = beam_at_distance(beam, g.d_l, g.theta_l);
    const auto quad = delay_quadratic(g, beam, at, lens_to_global<double>({0.0, 0.0}, g));
    const auto lin = delay_linear(g, beam, at);
    IrsParamsd irs;
    const double sq = delay_spread(quad, irs);
    const double sl = delay_spread(lin, irs);
    CHECK(sq > 0.0);
    // Quadratic curvature adds at most ||B|| max(L)^2 to the affine spread.
    const double bound = 2.0 * quad.B.cwiseAbs().maxCoeff();
    CHECK(std::abs(sq - sl) <= bound);
}

TEST_CASE("continuous-surface predicate flags tiny panels") {
    IrsParamsd irs;
    CHECK(irs.much_larger_than_wavelength(1550e-9));
    irs.length_x = 1e-5; // 6.5 wavelengths
    CHECK(!irs.much_larger_than_wavelength(1550e-9));
}
