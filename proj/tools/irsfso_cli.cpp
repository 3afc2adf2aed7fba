// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.
//
// Subcommands: delay, cir, taps, ber, sweep. Reports go to stdout, CSV data
// to --out. CSV uses '.' decimals, LF line endings and a header row.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "irsfso/cir.hpp"
#include "irsfso/config.hpp"
#include "irsfso/delay.hpp"
#include "irsfso/equalize.hpp"
#include "irsfso/link.hpp"
#include "irsfso/sim.hpp"

namespace {

using namespace irsfso;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string method = "corollary1";
    std::string equalizer;
    std::uint64_t seed = 0;
    bool have_seed = false;
};

ResolvedConfig load(const CommonOpts& o) {
    ResolvedConfig cfg = o.config_path.empty() ? default_config() : parse_config(o.config_path);
    if (o.have_seed)
        cfg.sim.seed = o.seed;
    if (!o.equalizer.empty())
        cfg.equalizer = o.equalizer;
    return cfg;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file '" + path + "'");
    f.precision(15);
    return f;
}

void print_header(const ResolvedConfig& cfg) {
    std::cout << "# resolved config\n" << echo_config(cfg) << "\n# derived\n"
              << derived_report(cfg);
}

// min_dt > 0 requests a grid fine enough for tap extraction (the numeric
// methods are priced accordingly).
Cir make_cir(const ResolvedConfig& cfg, const std::string& method, double min_dt = 0.0) {
    const auto& s = cfg.sim;
    const auto profile = delay_linear(s.geometry);
    const double support = std::abs(profile.a1) * s.irs.length_x / 2.0 +
                           std::abs(profile.a2) * s.irs.length_y / 2.0;
    auto samples_for = [&](std::size_t floor_n) {
        if (min_dt <= 0.0 || support == 0.0)
            return floor_n;
        const auto need = static_cast<std::size_t>(2.1 * support / min_dt) + 2;
        return std::max(floor_n, need);
    };
    if (method == "corollary1")
        return cir_corollary1(s.geometry, s.beam, s.irs, samples_for(2049));
    if (method == "theorem1")
        return cir_theorem1(s.geometry, s.beam, s.irs, samples_for(513));
    if (method == "oracle")
        return cir_oracle_lemma1(s.geometry, s.beam, s.irs, samples_for(161));
    throw std::invalid_argument("unknown method '" + method + "'");
}

int cmd_delay(const CommonOpts& o, int grid_n) {
    const ResolvedConfig cfg = load(o);
    print_header(cfg);
    const auto& g = cfg.sim.geometry;
    const auto at = beam_at_distance(cfg.sim.beam, g.d_l, g.theta_l);
    const auto profile = delay_linear(g, cfg.sim.beam, at);
    const auto rep = fresnel_check(g, cfg.sim.irs, at, cfg.sim.beam.lambda);
    const double spread = delay_spread(profile, cfg.sim.irs);

    std::cout.precision(12);
    std::cout << "tau0=" << profile.tau0 << "\n";
    std::cout << "tau_los=" << profile.tau_los << "\n";
    std::cout << "a1=" << profile.a1 << "\n";
    std::cout << "a2=" << profile.a2 << "\n";
    std::cout << "delay_spread=" << spread << "\n";
    std::cout << "nondispersive_theta_p_threshold="
              << nondispersive_theta_p_threshold(cfg.sim.T, cfg.sim.irs.length_x, g.theta_l, g.v_l)
              << "\n";
    std::cout << "fresnel_d_f=" << rep.d_f << "\n";
    std::cout << "fresnel_ok=" << (rep.fresnel_ok ? 1 : 0) << "\n";
    std::cout << "linear_lens_ok=" << (rep.linear_lens_ok ? 1 : 0) << "\n";
    std::cout << "linear_irs_ok=" << (rep.linear_irs_ok ? 1 : 0) << "\n";
    for (const auto& w : rep.warnings)
        std::cout << "warning=" << w << "\n";
    if (!cfg.sim.irs.much_larger_than_wavelength(cfg.sim.beam.lambda))
        std::cout << "warning=IRS side below 100 wavelengths; the continuous-surface model "
                     "is questionable\n";

    if (!o.out_path.empty()) {
        auto f = open_out(o.out_path);
        f << "x_m,y_m,tau_s\n";
        for (int i = 0; i < grid_n; ++i) {
            const double x = cfg.sim.irs.length_x * (double(i) / (grid_n - 1) - 0.5);
            for (int j = 0; j < grid_n; ++j) {
                const double y = cfg.sim.irs.length_y * (double(j) / (grid_n - 1) - 0.5);
                f << x << "," << y << "," << profile(x, y) << "\n";
            }
        }
    }
    return 0;
}

int cmd_cir(const CommonOpts& o) {
    const ResolvedConfig cfg = load(o);
    print_header(cfg);
    const Cir cir = make_cir(cfg, o.method);

    std::cout.precision(12);
    std::cout << "method=" << to_string(cir.method) << "\n";
    std::cout << "tau0=" << cir.tau0 << "\n";
    if (cfg.sim.irs.zeta_override)
        std::cout << "zeta=" << *cfg.sim.irs.zeta_override << "\n";
    else if (!cir.delta_channel)
        std::cout << "zeta=" << passivity_zeta(cfg.sim.geometry, cfg.sim.beam) << "\n";
    if (cir.delta_channel) {
        std::cout << "delta_channel=1\n";
        std::cout << "gain=" << cir.delta_gain << "\n";
    } else {
        std::cout << "delta_tau_3db=" << effective_delay_spread_3db(cir) << "\n";
        std::cout << "peak=" << cir.peak() << "\n";
        std::cout << "integral=" << cir.integral() << "\n";
    }

    if (!o.out_path.empty() && !cir.delta_channel) {
        auto f = open_out(o.out_path);
        f << "t_seconds,h_gml,method\n";
        for (std::size_t i = 0; i < cir.h.size(); ++i)
            f << cir.tau0 + cir.t_rel[i] << "," << cir.h[i] << "," << to_string(cir.method)
              << "\n";
    }
    return 0;
}

int cmd_taps(const CommonOpts& o) {
    const ResolvedConfig cfg = load(o);
    print_header(cfg);
    const Cir cir = make_cir(cfg, o.method, cfg.sim.T / 40.0);
    const DiscreteChannel ch = effective_taps(cir, cfg.sim.T, 1.0, cfg.sim.noise_var());

    std::cout.precision(12);
    std::cout << "t_off=" << ch.t_off << "\n";
    std::cout << "tap_count=" << ch.taps.size() << "\n";
    std::cout << "significant_taps=" << significant_tap_count(ch) << "\n";
    std::cout << "tap_sum=" << ch.tap_sum() << "\n";

    if (!o.out_path.empty()) {
        auto f = open_out(o.out_path);
        f << "m,h_e\n";
        for (std::size_t i = 0; i < ch.taps.size(); ++i)
            f << i << "," << ch.taps[i] << "\n";
    }
    return 0;
}

void write_ber_csv(std::ofstream& f, const std::vector<BerPoint>& pts) {
    f << "theta_p,delta_theta,equalizer,gamma_t_db,ber,ci95,n_bits,n_errors\n";
    for (const auto& p : pts)
        f << p.theta_p << "," << p.delta_theta << "," << p.equalizer << "," << p.gamma_t_db << ","
          << p.ber << "," << p.ci95 << "," << p.n_bits << "," << p.n_errors << "\n";
}

std::vector<Detector> detectors_for(const std::string& name) {
    if (name == "all" || name.empty())
        return {Detector::None, Detector::Zf, Detector::Mmse, Detector::ZfDfe, Detector::Mlse};
    const auto d = detector_from_string(name);
    if (!d)
        throw std::invalid_argument("unknown equalizer '" + name + "'");
    return {*d};
}

int cmd_ber(const CommonOpts& o) {
    const ResolvedConfig cfg = load(o);
    print_header(cfg);
    std::vector<BerPoint> pts;
    for (Detector det : detectors_for(cfg.equalizer))
        pts.push_back(ber_monte_carlo(cfg.sim, det));
    std::cout.precision(12);
    for (const auto& p : pts)
        std::cout << "equalizer=" << p.equalizer << " ber=" << p.ber << " ci95=" << p.ci95
                  << " n_bits=" << p.n_bits << " n_errors=" << p.n_errors
                  << (p.low_confidence ? " low_confidence=1" : "") << "\n";
    if (!o.out_path.empty()) {
        auto f = open_out(o.out_path);
        write_ber_csv(f, pts);
    }
    return 0;
}

int cmd_sweep(const CommonOpts& o) {
    const ResolvedConfig cfg = load(o);
    print_header(cfg);
    const auto pts =
        sweep_theta_p(cfg.sim, cfg.theta_grid, cfg.gamma_list, detectors_for(cfg.equalizer));
    std::cout.precision(12);
    for (const auto& p : pts)
        std::cout << "theta_p=" << p.theta_p << " equalizer=" << p.equalizer
                  << " gamma_t_db=" << p.gamma_t_db << " ber=" << p.ber << "\n";
    if (!o.out_path.empty()) {
        auto f = open_out(o.out_path);
        write_ber_csv(f, pts);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delay-dispersion simulator for IRS-assisted FSO links"};
    app.require_subcommand(1);

    CommonOpts o;
    int grid_n = 101;

    auto add_common = [&](CLI::App* sub, bool with_method, bool with_eq) {
        sub->add_option("--config", o.config_path, "JSON config file");
        sub->add_option("--out", o.out_path, "CSV output path");
        sub->add_option("--seed", o.seed, "root random seed")->each([&](const std::string&) {
            o.have_seed = true;
        });
        if (with_method)
            sub->add_option("--method", o.method, "CIR method")
                ->check(CLI::IsMember({"oracle", "theorem1", "corollary1"}));
        if (with_eq)
            sub->add_option("--equalizer", o.equalizer, "equalizer selection")
                ->check(CLI::IsMember({"none", "zf", "mmse", "zfdfe", "mlse", "all"}));
    };

    auto* c_delay = app.add_subcommand("delay", "delay profile, spread and regime report");
    add_common(c_delay, false, false);
    c_delay->add_option("--grid-n", grid_n, "tau CSV grid resolution");

    auto* c_cir = app.add_subcommand("cir", "channel impulse response");
    add_common(c_cir, true, false);

    auto* c_taps = app.add_subcommand("taps", "discrete channel taps");
    add_common(c_taps, true, false);

    auto* c_ber = app.add_subcommand("ber", "single-point Monte Carlo BER");
    add_common(c_ber, false, true);

    auto* c_sweep = app.add_subcommand("sweep", "BER sweep over theta_p");
    add_common(c_sweep, false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (c_delay->parsed())
            return cmd_delay(o, grid_n);
        if (c_cir->parsed())
            return cmd_cir(o);
        if (c_taps->parsed())
            return cmd_taps(o);
        if (c_ber->parsed())
            return cmd_ber(o);
        if (c_sweep->parsed())
            return cmd_sweep(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
