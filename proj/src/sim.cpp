// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#include "irsfso/sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "irsfso/cir.hpp"
#include "irsfso/equalize.hpp"
#include "irsfso/rng.hpp"

namespace irsfso {

namespace {

constexpr std::uint64_t kBlockBits = 1u << 16;

double chi2_quantile(double p, double nu) {
    // Wilson-Hilferty.
    const double z = p > 0.5 ? 1.959963984540054 : -1.959963984540054;
    const double a = 2.0 / (9.0 * nu);
    const double c = 1.0 - a + z * std::sqrt(a);
    return nu * c * c * c;
}

double ci95_half_width(std::uint64_t errors, std::uint64_t bits) {
    if (bits == 0)
        return 0.0;
    const double n = static_cast<double>(bits);
    const double k = static_cast<double>(errors);
    if (errors >= 10) {
        const double p = k / n;
        return 1.959963984540054 * std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
    }
    // Poisson upper bound via 0.5 chi2(0.975, 2k+2).
    const double lam_hi = 0.5 * chi2_quantile(0.975, 2.0 * k + 2.0);
    return (lam_hi - k) / n;
}

struct BlockDetectors {
    double P0 = 0;
    DiscreteChannel ch;          // full (1e-6 trimmed) taps, unit symbols
    std::vector<double> taps_p0; // P0-scaled taps
    // linear designs on the P0-scaled channel, symbols centered to +-1/2
    LinearEqualizer zf, mmse;
    DfeEqualizer dfe;
    // MLSE trellis channel: significance-trimmed slice and its start index
    std::vector<double> mlse_taps;
    std::size_t mlse_start = 0;
};

std::uint64_t count_errors(const std::vector<std::uint8_t>& tx,
                           const std::vector<std::uint8_t>& rx, std::size_t offset_rx) {
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < tx.size(); ++i) {
        const std::uint8_t r = (offset_rx + i) < rx.size() ? rx[offset_rx + i] : 0;
        e += tx[i] != r;
    }
    return e;
}

// Center the OOK samples to +-1/2 symbols: subtract the per-sample mean of
// the block-windowed transmission so edge samples carry no bias from the
// zero padding outside the block.
std::vector<double> center_block(const std::vector<double>& u, const std::vector<double>& taps_p0,
                                 std::size_t n_bits) {
    std::vector<double> out(u.size());
    for (std::size_t m = 0; m < u.size(); ++m) {
        double mean = 0.0;
        const std::size_t l_hi = std::min(taps_p0.size() - 1, m);
        for (std::size_t l = (m >= n_bits) ? m - n_bits + 1 : 0; l <= l_hi; ++l)
            mean += taps_p0[l];
        out[m] = u[m] - 0.5 * mean;
    }
    return out;
}

std::uint64_t run_block(const SimConfig& cfg, Detector det, const BlockDetectors& d,
                        std::uint64_t block_index, std::uint64_t bits_in_block) {
    Rng bit_rng(derive_seed(cfg.seed, 2 * block_index));
    std::vector<std::uint8_t> tx(bits_in_block);
    for (auto& b : tx)
        b = bit_rng.next_bit() ? 1 : 0;

    // Trailing noise-only samples cover the equalizers' decision delay.
    const std::vector<double> u =
        transmit_receive(tx, d.ch, d.P0, derive_seed(cfg.seed, 2 * block_index + 1),
                         static_cast<std::size_t>(cfg.n_eq) + 4);

    switch (det) {
    case Detector::None: {
        const std::size_t ci = d.ch.cursor_index();
        std::vector<double> aligned(u.begin() + static_cast<std::ptrdiff_t>(ci), u.end());
        const auto rx = threshold_detect(aligned, d.taps_p0[ci], 0.0, 1.0);
        return count_errors(tx, rx, 0);
    }
    case Detector::Zf:
    case Detector::Mmse: {
        const LinearEqualizer& eq = det == Detector::Zf ? d.zf : d.mmse;
        const std::vector<double> centered = center_block(u, d.taps_p0, tx.size());
        const std::vector<double> y = apply_fir(centered, eq.coeffs);
        std::uint64_t e = 0;
        const std::size_t delay = static_cast<std::size_t>(eq.decision_delay);
        for (std::size_t i = 0; i < tx.size(); ++i) {
            const std::size_t m = i + delay;
            const std::uint8_t bit = (m < y.size() && y[m] > 0.0) ? 1 : 0;
            e += bit != tx[i];
        }
        return e;
    }
    case Detector::ZfDfe: {
        const std::vector<double> centered = center_block(u, d.taps_p0, tx.size());
        const std::vector<double> y = apply_fir(centered, d.dfe.feedforward);
        const auto& fb = d.dfe.feedback;
        const std::size_t delay = static_cast<std::size_t>(d.dfe.decision_delay);
        std::vector<double> past(tx.size(), 0.0); // decided symbols, +-1/2
        std::uint64_t e = 0;
        for (std::size_t i = 0; i < tx.size(); ++i) {
            const std::size_t m = i + delay;
            double v = m < y.size() ? y[m] : 0.0;
            for (std::size_t j = 0; j < fb.size() && j < i; ++j)
                v -= fb[j] * past[i - 1 - j];
            const std::uint8_t bit = v > 0.0 ? 1 : 0;
            past[i] = bit ? 0.5 : -0.5;
            e += bit != tx[i];
        }
        return e;
    }
    case Detector::Mlse: {
        std::vector<double> shifted(u.begin() + static_cast<std::ptrdiff_t>(d.mlse_start),
                                    u.end());
        const auto rx = mlse_viterbi(shifted, d.mlse_taps, tx.size(), 0.0, 1.0);
        return count_errors(tx, rx, 0);
    }
    }
    return 0;
}

} // namespace

const char* to_string(Detector d) {
    switch (d) {
    case Detector::None: return "none";
    case Detector::Zf: return "zf";
    case Detector::Mmse: return "mmse";
    case Detector::ZfDfe: return "zfdfe";
    case Detector::Mlse: return "mlse";
    }
    return "?";
}

std::optional<Detector> detector_from_string(const std::string& name) {
    if (name == "none") return Detector::None;
    if (name == "zf") return Detector::Zf;
    if (name == "mmse") return Detector::Mmse;
    if (name == "zfdfe") return Detector::ZfDfe;
    if (name == "mlse") return Detector::Mlse;
    return std::nullopt;
}

double SimConfig::p0() const {
    if (gamma_t_db)
        return std::sqrt(std::pow(10.0, *gamma_t_db / 10.0) * N0 / T);
    if (p0_w)
        return *p0_w;
    return beam.P0;
}

double SimConfig::gamma_t() const {
    if (gamma_t_db)
        return std::pow(10.0, *gamma_t_db / 10.0);
    const double p = p0();
    return p * p * T / N0;
}

void SimConfig::validate() const {
    geometry.validate();
    beam.validate();
    irs.validate();
    if (gamma_t_db && p0_w)
        throw std::invalid_argument("sim: specify gamma_t or P0, not both");
    if (!(T > 0.0))
        throw std::invalid_argument("sim: T must be > 0");
    if (!(N0 > 0.0))
        throw std::invalid_argument("sim: N0 must be > 0");
    if (n_bits < 10000)
        throw std::invalid_argument("sim: n_bits must be >= 1e4");
}

double analytic_ook_ber(double gain, double P0, double noise_var) {
    if (!(noise_var > 0.0))
        throw std::invalid_argument("analytic_ook_ber: noise_var must be > 0");
    const double q_arg = gain * P0 / (2.0 * std::sqrt(noise_var));
    return 0.5 * std::erfc(q_arg / std::sqrt(2.0));
}

BerPoint ber_monte_carlo(const SimConfig& cfg, Detector det) {
    cfg.validate();

    BlockDetectors d;
    d.P0 = cfg.p0();
    const Cir cir = cir_corollary1(cfg.geometry, cfg.beam, cfg.irs);
    d.ch = effective_taps(cir, cfg.T, 1.0, cfg.noise_var());
    d.taps_p0.resize(d.ch.taps.size());
    for (std::size_t i = 0; i < d.ch.taps.size(); ++i)
        d.taps_p0[i] = d.P0 * d.ch.taps[i];

    if (det == Detector::Zf)
        d.zf = design_zf(d.taps_p0, cfg.n_eq);
    if (det == Detector::Mmse)
        d.mmse = design_mmse(d.taps_p0, cfg.n_eq, cfg.noise_var(), 0.25);
    if (det == Detector::ZfDfe)
        d.dfe = design_zf_dfe(d.taps_p0, cfg.n_eq);
    if (det == Detector::Mlse) {
        // Trellis channel: the significant taps; raise the threshold if the
        // state space would exceed the 16-tap guard.
        double pk = 0.0;
        for (double v : d.taps_p0)
            pk = std::max(pk, std::abs(v));
        double frac = cfg.mlse_significance;
        std::size_t lo = 0, hi = d.taps_p0.size();
        for (;;) {
            lo = 0;
            hi = d.taps_p0.size();
            while (lo < hi && std::abs(d.taps_p0[lo]) < frac * pk)
                ++lo;
            while (hi > lo && std::abs(d.taps_p0[hi - 1]) < frac * pk)
                --hi;
            if (hi - lo <= 16)
                break;
            frac *= 1.5;
        }
        d.mlse_start = lo;
        d.mlse_taps.assign(d.taps_p0.begin() + static_cast<std::ptrdiff_t>(lo),
                           d.taps_p0.begin() + static_cast<std::ptrdiff_t>(hi));
    }

    const unsigned n_workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    // Blocks are evaluated in parallel but consumed strictly in index
    // order; with early stopping the result is the shortest block prefix
    // whose cumulative error count reaches the target, independent of the
    // worker count.
    std::uint64_t done_bits = 0, errors = 0, block = 0;
    bool stopped = false;
    while (!stopped && done_bits < cfg.n_bits) {
        std::vector<std::uint64_t> batch_bits;
        std::vector<std::future<std::uint64_t>> batch;
        std::uint64_t planned = done_bits;
        for (unsigned wkr = 0; wkr < n_workers && planned < cfg.n_bits; ++wkr) {
            const std::uint64_t nb = std::min<std::uint64_t>(kBlockBits, cfg.n_bits - planned);
            const std::uint64_t idx = block++;
            batch_bits.push_back(nb);
            batch.push_back(std::async(std::launch::async, [&cfg, det, &d, idx, nb] {
                return run_block(cfg, det, d, idx, nb);
            }));
            planned += nb;
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const std::uint64_t e = batch[i].get();
            if (stopped)
                continue; // later blocks are discarded once the prefix ends
            errors += e;
            done_bits += batch_bits[i];
            if (cfg.target_errors > 0 && errors >= cfg.target_errors)
                stopped = true;
        }
    }

    BerPoint pt;
    pt.theta_p = cfg.geometry.theta_p;
    pt.delta_theta = cfg.geometry.theta_l - cfg.geometry.theta_p;
    pt.equalizer = to_string(det);
    pt.gamma_t_db = 10.0 * std::log10(cfg.gamma_t());
    pt.n_bits = done_bits;
    pt.n_errors = errors;
    pt.ber = done_bits ? static_cast<double>(errors) / static_cast<double>(done_bits) : 0.0;
    pt.ci95 = ci95_half_width(errors, done_bits);
    pt.low_confidence = errors < 100;
    return pt;
}

std::vector<BerPoint> sweep_theta_p(const SimConfig& cfg, const std::vector<double>& theta_grid,
                                    const std::vector<double>& gamma_t_db,
                                    const std::vector<Detector>& detectors) {
    std::vector<BerPoint> out;
    for (double g : gamma_t_db) {
        for (double th : theta_grid) {
            if (!(th > 0.0 && th <= kPi / 2))
                throw std::invalid_argument("sweep grid must lie in (0, pi/2]");
            for (Detector det : detectors) {
                SimConfig c = cfg;
                c.geometry.theta_p = th;
                c.gamma_t_db = g;
                c.p0_w.reset();
                out.push_back(ber_monte_carlo(c, det));
            }
        }
    }
    return out;
}

} // namespace irsfso
