// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#include "irsfso/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "irsfso/cir.hpp"
#include "irsfso/delay.hpp"

namespace irsfso {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw std::invalid_argument("config: " + path + ": " + msg);
}

double to_number(const json& v, const std::string& path) {
    if (!v.is_number())
        fail(path, "expected a number");
    return v.get<double>();
}

// Reads `key` or, for angles, `key_deg`; rejects conflicts and remembers
// which keys were consumed.
struct Section {
    const json& obj;
    std::string name;
    std::vector<std::string> seen;

    bool has(const std::string& key) { return obj.contains(key); }

    double number(const std::string& key, double fallback) {
        if (!obj.contains(key))
            return fallback;
        seen.push_back(key);
        return to_number(obj.at(key), name + "." + key);
    }

    double angle(const std::string& key, double fallback_rad) {
        const std::string deg_key = key + "_deg";
        if (obj.contains(key) && obj.contains(deg_key))
            fail(name + "." + key, "give radians or degrees, not both");
        if (obj.contains(deg_key)) {
            seen.push_back(deg_key);
            return to_number(obj.at(deg_key), name + "." + deg_key) * kPi / 180.0;
        }
        return number(key, fallback_rad);
    }

    void finish() {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (std::find(seen.begin(), seen.end(), it.key()) == seen.end())
                fail(name + "." + it.key(), "unknown key");
        }
    }
};

double dbm_per_mhz_to_w_per_hz(double dbm_per_mhz) {
    // dBm/MHz -> dBm/Hz -> W/Hz
    return std::pow(10.0, (dbm_per_mhz - 60.0 - 30.0) / 10.0);
}

} // namespace

ResolvedConfig default_config() {
    ResolvedConfig cfg;
    // SimConfig member defaults already carry the desk-scale values.
    cfg.theta_grid.resize(15);
    for (int i = 0; i < 15; ++i)
        cfg.theta_grid[static_cast<std::size_t>(i)] = 0.1 + (1.5 - 0.1) * i / 14.0;
    cfg.gamma_list = {16.0, 24.0};
    return cfg;
}

ResolvedConfig parse_config_text(const std::string& text) {
    ResolvedConfig cfg = default_config();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        return cfg;

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
    }
    if (!root.is_object())
        throw std::invalid_argument("config: top level must be an object");

    for (auto it = root.begin(); it != root.end(); ++it) {
        const std::string& k = it.key();
        if (k != "geometry" && k != "beam" && k != "irs" && k != "link" && k != "sim")
            fail(k, "unknown section");
        if (!it.value().is_object())
            fail(k, "expected an object");
    }

    auto& g = cfg.sim.geometry;
    if (root.contains("geometry")) {
        Section s{root.at("geometry"), "geometry", {}};
        g.d_l = s.number("d_l", g.d_l);
        g.d_p = s.number("d_p", g.d_p);
        g.theta_l = s.angle("theta_l", g.theta_l);
        g.phi_l = s.angle("phi_l", g.phi_l);
        g.theta_p = s.angle("theta_p", g.theta_p);
        g.phi_p = s.angle("phi_p", g.phi_p);
        g.lens_radius = s.number("lens_radius", g.lens_radius);
        g.v_l = s.number("v_l", g.v_l);
        s.finish();
    }
    if (root.contains("beam")) {
        Section s{root.at("beam"), "beam", {}};
        cfg.sim.beam.w0 = s.number("w0", cfg.sim.beam.w0);
        cfg.sim.beam.lambda = s.number("lambda", cfg.sim.beam.lambda);
        cfg.sim.beam.eta = s.number("eta", cfg.sim.beam.eta);
        if (s.has("P0_w")) {
            cfg.sim.p0_w = s.number("P0_w", 0.0);
            cfg.sim.beam.P0 = *cfg.sim.p0_w;
        }
        s.finish();
    }
    if (root.contains("irs")) {
        Section s{root.at("irs"), "irs", {}};
        cfg.sim.irs.length_x = s.number("L_x", cfg.sim.irs.length_x);
        cfg.sim.irs.length_y = s.number("L_y", cfg.sim.irs.length_y);
        cfg.sim.irs.phi0 = s.number("phi0", cfg.sim.irs.phi0);
        if (s.has("zeta"))
            cfg.sim.irs.zeta_override = s.number("zeta", 0.0);
        if (s.has("q_x"))
            cfg.sim.irs.q_x = static_cast<std::uint32_t>(s.number("q_x", 0.0));
        if (s.has("q_y"))
            cfg.sim.irs.q_y = static_cast<std::uint32_t>(s.number("q_y", 0.0));
        s.finish();
    }
    if (root.contains("link")) {
        Section s{root.at("link"), "link", {}};
        if (s.has("W_fso_hz") && s.has("T_s"))
            fail("link", "give W_fso_hz or T_s, not both");
        if (s.has("W_fso_hz"))
            cfg.sim.T = 1.0 / s.number("W_fso_hz", 1e10);
        else
            cfg.sim.T = s.number("T_s", cfg.sim.T);
        if (s.has("N0_dbm_per_mhz") && s.has("N0_w_per_hz"))
            fail("link", "give N0_dbm_per_mhz or N0_w_per_hz, not both");
        if (s.has("N0_dbm_per_mhz"))
            cfg.sim.N0 = dbm_per_mhz_to_w_per_hz(s.number("N0_dbm_per_mhz", -104.0));
        else
            cfg.sim.N0 = s.number("N0_w_per_hz", cfg.sim.N0);
        s.finish();
    }
    if (root.contains("sim")) {
        Section s{root.at("sim"), "sim", {}};
        if (s.has("gamma_t_db"))
            cfg.sim.gamma_t_db = s.number("gamma_t_db", 0.0);
        cfg.sim.n_bits = static_cast<std::uint64_t>(s.number("n_bits",
                                                             static_cast<double>(cfg.sim.n_bits)));
        cfg.sim.target_errors = static_cast<std::uint64_t>(
            s.number("target_errors", static_cast<double>(cfg.sim.target_errors)));
        cfg.sim.seed = static_cast<std::uint64_t>(s.number("seed",
                                                           static_cast<double>(cfg.sim.seed)));
        cfg.sim.n_eq = static_cast<int>(s.number("n_eq", cfg.sim.n_eq));
        if (s.has("equalizer")) {
            s.seen.push_back("equalizer");
            const auto& v = s.obj.at("equalizer");
            if (!v.is_string())
                fail("sim.equalizer", "expected a string");
            cfg.equalizer = v.get<std::string>();
            if (cfg.equalizer != "all" && !detector_from_string(cfg.equalizer))
                fail("sim.equalizer", "unknown equalizer '" + cfg.equalizer + "'");
        }
        if (s.has("theta_grid")) {
            s.seen.push_back("theta_grid");
            const auto& v = s.obj.at("theta_grid");
            if (!v.is_array())
                fail("sim.theta_grid", "expected an array");
            cfg.theta_grid.clear();
            for (const auto& e : v)
                cfg.theta_grid.push_back(to_number(e, "sim.theta_grid[]"));
        }
        if (s.has("gamma_t_db_list")) {
            s.seen.push_back("gamma_t_db_list");
            const auto& v = s.obj.at("gamma_t_db_list");
            if (!v.is_array())
                fail("sim.gamma_t_db_list", "expected an array");
            cfg.gamma_list.clear();
            for (const auto& e : v)
                cfg.gamma_list.push_back(to_number(e, "sim.gamma_t_db_list[]"));
        }
        s.finish();
    }

    if (cfg.sim.gamma_t_db && cfg.sim.p0_w)
        throw std::invalid_argument(
            "config: beam.P0_w and sim.gamma_t_db are mutually exclusive");

    // Surface invariant violations with key paths.
    try {
        cfg.sim.geometry.validate();
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    try {
        cfg.sim.beam.validate();
        cfg.sim.irs.validate();
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!(cfg.sim.T > 0.0))
        throw std::invalid_argument("config: link.T_s must be > 0");
    if (!(cfg.sim.N0 > 0.0))
        throw std::invalid_argument("config: link.N0 must be > 0");
    return cfg;
}

ResolvedConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string echo_config(const ResolvedConfig& cfg) {
    json root;
    const auto& g = cfg.sim.geometry;
    root["geometry"] = {{"d_l", g.d_l},
                        {"theta_l", g.theta_l},
                        {"phi_l", g.phi_l},
                        {"d_p", g.d_p},
                        {"theta_p", g.theta_p},
                        {"phi_p", g.phi_p},
                        {"lens_radius", g.lens_radius},
                        {"v_l", g.v_l}};
    root["beam"] = {{"w0", cfg.sim.beam.w0},
                    {"lambda", cfg.sim.beam.lambda},
                    {"eta", cfg.sim.beam.eta}};
    if (cfg.sim.p0_w)
        root["beam"]["P0_w"] = *cfg.sim.p0_w;
    root["irs"] = {{"L_x", cfg.sim.irs.length_x},
                   {"L_y", cfg.sim.irs.length_y},
                   {"phi0", cfg.sim.irs.phi0}};
    if (cfg.sim.irs.zeta_override)
        root["irs"]["zeta"] = *cfg.sim.irs.zeta_override;
    root["link"] = {{"T_s", cfg.sim.T}, {"N0_w_per_hz", cfg.sim.N0}};
    root["sim"] = {{"n_bits", static_cast<double>(cfg.sim.n_bits)},
                   {"target_errors", static_cast<double>(cfg.sim.target_errors)},
                   {"seed", static_cast<double>(cfg.sim.seed)},
                   {"n_eq", cfg.sim.n_eq},
                   {"equalizer", cfg.equalizer},
                   {"theta_grid", cfg.theta_grid},
                   {"gamma_t_db_list", cfg.gamma_list}};
    if (cfg.sim.gamma_t_db)
        root["sim"]["gamma_t_db"] = *cfg.sim.gamma_t_db;
    return root.dump(2);
}

std::string derived_report(const ResolvedConfig& cfg) {
    const auto& g = cfg.sim.geometry;
    const auto& b = cfg.sim.beam;
    const auto at = beam_at_distance(b, g.d_l, g.theta_l);
    const auto profile = delay_linear(g, b, at);
    std::ostringstream os;
    os.precision(12);
    os << "z_R=" << b.rayleigh_range() << "\n";
    os << "w_dl=" << at.w_dl << "\n";
    os << "psi0=" << at.psi0 << "\n";
    os << "a1=" << profile.a1 << "\n";
    os << "a2=" << profile.a2 << "\n";
    os << "tau_los=" << profile.tau_los << "\n";
    os << "tau0=" << profile.tau0 << "\n";
    os << "P0=" << cfg.sim.p0() << "\n";
    os << "gamma_t_db=" << 10.0 * std::log10(cfg.sim.gamma_t()) << "\n";
    os << "noise_var=" << cfg.sim.noise_var() << "\n";
    return os.str();
}

} // namespace irsfso
