// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#include <doctest.h>

#include <cmath>

#include "irsfso/sim.hpp"

using namespace irsfso;

namespace {

SimConfig desk_config(double theta_p, double gamma_db) {
    SimConfig cfg;
    cfg.geometry.theta_p = theta_p;
    cfg.gamma_t_db = gamma_db;
    cfg.n_bits = 100000;
    cfg.target_errors = 0;
    cfg.seed = 99;
    return cfg;
}

} // namespace

TEST_CASE("analytic OOK BER endpoints") {
    CHECK(analytic_ook_ber(0.0, 1.0, 1.0) == doctest::Approx(0.5));
    CHECK(analytic_ook_ber(100.0, 1.0, 1e-4) < 1e-300);
    // Q(3)
    CHECK(analytic_ook_ber(6.0, 1.0, 1.0) == doctest::Approx(1.3498980e-3).epsilon(1e-5));
    CHECK_THROWS_AS(analytic_ook_ber(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("config derives the missing power/SNR quantity") {
    SimConfig cfg;
    cfg.gamma_t_db = 20.0;
    CHECK(cfg.gamma_t() == doctest::Approx(100.0));
    CHECK(cfg.p0() == doctest::Approx(std::sqrt(100.0 * cfg.N0 / cfg.T)).epsilon(1e-12));

    SimConfig cfg2;
    cfg2.p0_w = 5e-5;
    CHECK(cfg2.p0() == doctest::Approx(5e-5));
    CHECK(cfg2.gamma_t() == doctest::Approx(5e-5 * 5e-5 * cfg2.T / cfg2.N0).epsilon(1e-12));

    SimConfig bad;
    bad.gamma_t_db = 16.0;
    bad.p0_w = 1e-4;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("identical config and seed give bit-identical results") {
    // gamma low enough that errors actually occur (visible-BER regime).
    const SimConfig cfg = desk_config(1.55, -85.8);
    const auto a = ber_monte_carlo(cfg, Detector::None);
    const auto b = ber_monte_carlo(cfg, Detector::None);
    CHECK(a.ber == b.ber);
    CHECK(a.n_errors == b.n_errors);
    CHECK(a.n_bits == b.n_bits);
    CHECK(a.n_errors > 100);

    SimConfig other = cfg;
    other.seed = 100;
    const auto c = ber_monte_carlo(other, Detector::None);
    CHECK(c.n_errors != a.n_errors); // different noise realization
}

TEST_CASE("near-flat channel Monte Carlo matches the Q-function") {
    // theta_p = 1.55 is close enough to pi/2 that the channel is one tap.
    SimConfig cfg = desk_config(1.55, 0.0);
    cfg.geometry.theta_p = 1.55;
    cfg.n_bits = 400000;
    // Choose gamma so the analytic BER sits near 1e-2: the Q argument is
    // gain * sqrt(gamma_t / (2T)).
    cfg.gamma_t_db = -85.8;

    const auto pt = ber_monte_carlo(cfg, Detector::None);

    // Recover the single-tap gain the template used.
    const Cir cir = cir_corollary1(cfg.geometry, cfg.beam, cfg.irs);
    const auto ch = effective_taps(cir, cfg.T, 1.0, cfg.noise_var());
    const double gain = ch.taps[ch.cursor_index()];
    const double expect = analytic_ook_ber(gain, cfg.p0(), cfg.noise_var());

    const double sigma = std::sqrt(expect * (1.0 - expect) / static_cast<double>(pt.n_bits));
    CHECK(std::abs(pt.ber - expect) < 3.0 * sigma + 1e-9);
}

TEST_CASE("zero noise with an invertible channel yields zero errors") {
    // theta_p = 1.45 gives a short, well-conditioned channel that 20
    // equalizer taps invert to working precision.
    SimConfig cfg = desk_config(1.45, 30.0);
    cfg.N0 = 1e-40; // effectively noiseless but keeps validation happy
    cfg.n_bits = 20000;
    for (Detector det : {Detector::Zf, Detector::Mmse, Detector::ZfDfe, Detector::Mlse}) {
        const auto pt = ber_monte_carlo(cfg, det);
        CHECK(pt.n_errors == 0);
    }
}

TEST_CASE("zero noise MLSE and DFE are exact even on the dispersive channel") {
    SimConfig cfg = desk_config(1.3, 30.0);
    cfg.N0 = 1e-40;
    cfg.n_bits = 20000;
    for (Detector det : {Detector::ZfDfe, Detector::Mlse}) {
        const auto pt = ber_monte_carlo(cfg, det);
        CHECK(pt.n_errors == 0);
    }
}

TEST_CASE("detector names round-trip") {
    for (Detector d :
         {Detector::None, Detector::Zf, Detector::Mmse, Detector::ZfDfe, Detector::Mlse})
        CHECK(detector_from_string(to_string(d)) == d);
    CHECK(!detector_from_string("dfe"));
}

TEST_CASE("sweep produces the full product and respects the grid bound") {
    SimConfig cfg = desk_config(0.5, 16.0);
    cfg.n_bits = 10000;
    const auto pts = sweep_theta_p(cfg, {0.8, 1.2}, {10.0, 20.0}, {Detector::None, Detector::Zf});
    CHECK(pts.size() == 8);
    CHECK_THROWS_AS(sweep_theta_p(cfg, {0.0}, {10.0}, {Detector::None}),
                    std::invalid_argument);

    // Single point equals ber_monte_carlo with the same settings.
    SimConfig one = cfg;
    one.geometry.theta_p = 0.8;
    one.gamma_t_db = 10.0;
    one.p0_w.reset();
    const auto direct = ber_monte_carlo(one, Detector::None);
    CHECK(pts[0].ber == direct.ber);
    CHECK(pts[0].n_errors == direct.n_errors);
}

TEST_CASE("Monte Carlo stays within 3 ci95 of the analytic BER across seeds") {
    SimConfig cfg = desk_config(1.55, -85.8);
    cfg.n_bits = 100000;
    const Cir cir = cir_corollary1(cfg.geometry, cfg.beam, cfg.irs);
    const auto ch = effective_taps(cir, cfg.T, 1.0, cfg.noise_var());
    const double expect = analytic_ook_ber(ch.taps[ch.cursor_index()], cfg.p0(), cfg.noise_var());
    int hits = 0;
    for (int run = 0; run < 100; ++run) {
        cfg.seed = 1000 + static_cast<std::uint64_t>(run);
        const auto pt = ber_monte_carlo(cfg, Detector::None);
        if (std::abs(pt.ber - expect) <= 3.0 * pt.ci95)
            ++hits;
    }
    CHECK(hits >= 97); // nominal coverage of a 3 sigma bound is ~99.7%
}

TEST_CASE("normalized delay spread ranks no-equalizer BER") {
    // Larger delta_theta -> larger spread/T -> worse unequalized BER.
    const double gamma = 20.0;
    double prev_ber = -1.0;
    for (double theta_p : {1.4, 0.9, 0.45, 0.1}) {
        SimConfig cfg = desk_config(theta_p, gamma);
        const auto pt = ber_monte_carlo(cfg, Detector::None);
        CHECK(pt.ber >= prev_ber - 3.0 * pt.ci95);
        prev_ber = pt.ber;
    }
}

TEST_CASE("early stop lands on a deterministic block prefix") {
    SimConfig cfg = desk_config(1.55, -85.8);
    cfg.n_bits = 500000;
    cfg.target_errors = 200;
    const auto a = ber_monte_carlo(cfg, Detector::None);
    const auto b = ber_monte_carlo(cfg, Detector::None);
    CHECK(a.n_bits == b.n_bits);
    CHECK(a.n_errors == b.n_errors);
    CHECK(a.n_errors >= 200);
    CHECK(a.n_bits < cfg.n_bits);         // stopped early
    CHECK(a.n_bits % (1u << 16) == 0);    // whole blocks only
}
