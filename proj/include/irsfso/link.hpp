// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "irsfso/cir.hpp"

namespace irsfso {

struct InsufficientResolution : std::runtime_error {
    InsufficientResolution()
        : std::runtime_error("CIR grid too coarse: need >= 32 samples per symbol period") {}
};

// Rectangular transmit pulse g_tx(t) = (1/T) rect(t/T) with the matched
// receive filter; their cascade is the unit-area triangle of base 2T.
enum class PulseFamily { Rect };

struct PulseShape {
    double T;                             // symbol duration (s)
    PulseFamily family = PulseFamily::Rect;

    // g_tx ** g_rx evaluated at offset t.
    double cascade(double t) const {
        const double a = 1.0 - std::abs(t) / T;
        return a > 0.0 ? a / T : 0.0;
    }
};

// Symbol-rate tap model u[m] = scale-included taps applied to OOK symbols
// plus white Gaussian noise. Taps are dimensionless gains: the sampled
// cascade response times T, so a non-dispersive channel of gain h0 yields
// the single tap h0 and the tap sum equals the CIR time integral.
struct DiscreteChannel {
    std::vector<double> taps; // h_e[0..M-1]
    double T = 0;             // symbol period (s)
    double noise_var = 0;     // variance of n[m]
    double scale = 1;         // composite R h_p h_a factor
    double t_off = 0;         // sampling phase relative to tau0 (s)
    double tau0 = 0;

    double tap_sum() const {
        double s = 0;
        for (double v : taps)
            s += v;
        return s;
    }
    double tap_energy() const {
        double s = 0;
        for (double v : taps)
            s += v * v;
        return s;
    }
    std::size_t cursor_index() const {
        std::size_t idx = 0;
        for (std::size_t i = 1; i < taps.size(); ++i)
            if (taps[i] > taps[idx])
                idx = i;
        return idx;
    }
};

// Reduce a sampled CIR to symbol-spaced taps: convolve with the pulse
// cascade, sweep the sampling phase over one symbol for maximum tap energy,
// trim leading/trailing taps below 1e-6 of the peak.
DiscreteChannel effective_taps(const Cir& cir, double T, double scale = 1.0,
                               double noise_var = 0.0, int offset_steps = 64);

// Number of taps at or above `fraction` of the peak tap.
std::size_t significant_tap_count(const DiscreteChannel& ch, double fraction = 0.01);

// i.i.d. zero-mean Gaussian samples of the given variance; fixed seed gives
// a fixed sequence.
std::vector<double> awgn_sequence(std::size_t len, double noise_var, std::uint64_t seed);

// u[m] = P0 sum_l h_e[l] a[m-l] + n[m], zero-padded outside the bit vector.
// Output length = bits + taps - 1 + extra_samples; the extra samples carry
// noise only (the receiver keeps sampling past the burst, which equalizers
// with a decision delay need for their look-ahead).
std::vector<double> transmit_receive(const std::vector<std::uint8_t>& bits,
                                     const DiscreteChannel& ch, double P0, std::uint64_t seed,
                                     std::size_t extra_samples = 0);

} // namespace irsfso
