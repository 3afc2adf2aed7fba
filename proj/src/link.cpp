// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#include "irsfso/link.hpp"

#include <algorithm>
#include <cmath>

#include "irsfso/rng.hpp"

namespace irsfso {

namespace {

// (h ** cascade)(t) on the uniform CIR grid, trapezoid weights.
double cascade_conv(const Cir& cir, const PulseShape& pulse, double t) {
    const double dt = cir.dt();
    const auto& tg = cir.t_rel;
    const auto& h = cir.h;
    // cascade support is (t - T, t + T)
    const double lo = t - pulse.T, hi = t + pulse.T;
    const auto first = std::lower_bound(tg.begin(), tg.end(), lo);
    const auto last = std::upper_bound(tg.begin(), tg.end(), hi);
    double acc = 0.0;
    for (auto it = first; it != last; ++it) {
        const std::size_t i = static_cast<std::size_t>(it - tg.begin());
        double w = dt;
        if (i == 0 || i + 1 == tg.size())
            w *= 0.5;
        acc += h[i] * pulse.cascade(t - tg[i]) * w;
    }
    return acc;
}

} // namespace

DiscreteChannel effective_taps(const Cir& cir, double T, double scale, double noise_var,
                               int offset_steps) {
    DiscreteChannel ch;
    ch.T = T;
    ch.scale = scale;
    ch.noise_var = noise_var;
    ch.tau0 = cir.tau0;

    if (cir.delta_channel) {
        ch.taps = {cir.delta_gain * scale};
        ch.t_off = 0.0;
        return ch;
    }
    if (cir.h.size() < 2 || cir.dt() > T / 32.0)
        throw InsufficientResolution();

    const PulseShape pulse{T};
    const double span = cir.t_rel.back() + T;
    const int m_lo = static_cast<int>(std::floor((cir.t_rel.front() - T) / T)) - 1;
    const int m_hi = static_cast<int>(std::ceil(span / T)) + 1;

    std::vector<double> best;
    double best_energy = -1.0, best_off = 0.0;
    for (int s = 0; s < offset_steps; ++s) {
        const double off = -T / 2.0 + T * static_cast<double>(s) / offset_steps;
        std::vector<double> taps;
        taps.reserve(static_cast<std::size_t>(m_hi - m_lo + 1));
        double energy = 0.0;
        for (int m = m_lo; m <= m_hi; ++m) {
            const double v = T * cascade_conv(cir, pulse, off + m * T);
            taps.push_back(v);
            energy += v * v;
        }
        if (energy > best_energy) {
            best_energy = energy;
            best = std::move(taps);
            best_off = off;
        }
    }

    // Trim below 1e-6 of the peak.
    double pk = 0.0;
    for (double v : best)
        pk = std::max(pk, std::abs(v));
    std::size_t lo = 0, hi = best.size();
    while (lo < hi && std::abs(best[lo]) < 1e-6 * pk)
        ++lo;
    while (hi > lo && std::abs(best[hi - 1]) < 1e-6 * pk)
        --hi;
    ch.taps.assign(best.begin() + static_cast<std::ptrdiff_t>(lo),
                   best.begin() + static_cast<std::ptrdiff_t>(hi));
    if (ch.taps.empty())
        ch.taps = {0.0};
    for (double& v : ch.taps)
        v *= scale;
    ch.t_off = best_off;
    return ch;
}

std::size_t significant_tap_count(const DiscreteChannel& ch, double fraction) {
    double pk = 0.0;
    for (double v : ch.taps)
        pk = std::max(pk, std::abs(v));
    if (pk <= 0.0)
        return 0;
    std::size_t n = 0;
    for (double v : ch.taps)
        if (std::abs(v) >= fraction * pk)
            ++n;
    return n;
}

std::vector<double> awgn_sequence(std::size_t len, double noise_var, std::uint64_t seed) {
    if (noise_var < 0.0)
        throw std::invalid_argument("awgn_sequence: negative variance");
    std::vector<double> out(len, 0.0);
    if (noise_var == 0.0)
        return out;
    Rng rng(seed);
    const double sigma = std::sqrt(noise_var);
    for (auto& v : out)
        v = sigma * rng.next_normal();
    return out;
}

std::vector<double> transmit_receive(const std::vector<std::uint8_t>& bits,
                                     const DiscreteChannel& ch, double P0, std::uint64_t seed,
                                     std::size_t extra_samples) {
    const std::size_t n_sig = bits.empty() ? 0 : bits.size() + ch.taps.size() - 1;
    std::vector<double> u = awgn_sequence(n_sig + extra_samples, ch.noise_var, seed);
    for (std::size_t m = 0; m < n_sig; ++m) {
        double acc = 0.0;
        const std::size_t l_lo = m >= bits.size() ? m - bits.size() + 1 : 0;
        const std::size_t l_hi = std::min(ch.taps.size() - 1, m);
        for (std::size_t l = l_lo; l <= l_hi; ++l)
            if (bits[m - l])
                acc += ch.taps[l];
        u[m] += P0 * acc;
    }
    return u;
}

} // namespace irsfso
