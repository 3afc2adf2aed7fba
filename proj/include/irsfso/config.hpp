// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

#include <string>
#include <vector>

#include "irsfso/sim.hpp"

namespace irsfso {

// Fully resolved run configuration: simulation parameters plus the sweep
// axes. Defaults reproduce the desk-scale 200 m / 220 m link with a 1 m^2
// IRS, 1 mm / 1550 nm beam, 10 GHz bandwidth and -104 dBm/MHz noise.
struct ResolvedConfig {
    SimConfig sim;
    std::vector<double> theta_grid; // sweep grid (rad)
    std::vector<double> gamma_list; // sweep transmit SNRs (dB)
    std::string equalizer = "all";
};

ResolvedConfig default_config();

// Parse a JSON config file. Angles are radians unless the key carries a
// _deg suffix; noise is given as N0_dbm_per_mhz or N0_w_per_hz; the link
// rate as W_fso_hz or T_s. Unknown keys and unit-key conflicts are errors
// with the offending key path in the message.
ResolvedConfig parse_config(const std::string& path);
ResolvedConfig parse_config_text(const std::string& text);

// Canonical JSON echo of a resolved config (radians, W, Hz). Feeding the
// echo back through parse_config_text reproduces the same configuration.
std::string echo_config(const ResolvedConfig& cfg);

// Human-readable derived quantities (z_R, w(d_l), a1, tau_los, ...).
std::string derived_report(const ResolvedConfig& cfg);

} // namespace irsfso
