// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace irsfso {

struct IllConditioned : std::runtime_error {
    explicit IllConditioned(double cond)
        : std::runtime_error("equalizer design is ill conditioned (condition estimate " +
                             std::to_string(cond) + ")"),
          condition(cond) {}
    double condition;
};

struct StateSpaceTooLarge : std::runtime_error {
    StateSpaceTooLarge()
        : std::runtime_error("MLSE supports at most 16 channel taps (2^15 states)") {}
};

enum class EqKind { ZF, MMSE };

struct LinearEqualizer {
    std::vector<double> coeffs;
    int decision_delay = 0;
    EqKind kind = EqKind::ZF;
    double design_metric = 0; // ZF: residual norm; MMSE: output MSE
};

struct DfeEqualizer {
    std::vector<double> feedforward;
    std::vector<double> feedback; // applied to past decisions only
    int decision_delay = 0;
};

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

// Least-squares zero-forcing design: (coeffs ** taps) ~ unit impulse at the
// decision delay. delay < 0 picks the delay with the smallest residual.
LinearEqualizer design_zf(const std::vector<double>& taps, int n_eq, int decision_delay = -1);

// Wiener design for white symbols of variance signal_var in white noise of
// variance noise_var; coincides with ZF when noise_var = 0.
LinearEqualizer design_mmse(const std::vector<double>& taps, int n_eq, double noise_var,
                            double signal_var, int decision_delay = -1);

// Zero-forcing decision feedback: the feedforward filter zero-forces the
// precursors with minimum norm, the feedback taps equal the remaining
// postcursor response so correct past decisions cancel it exactly.
// n_fb < 0 defaults to len(taps) - 1.
DfeEqualizer design_zf_dfe(const std::vector<double>& taps, int n_ff = 20, int n_fb = -1);

// Exact ML sequence detection over the trellis of the channel memory, for
// OOK symbol levels {level0, level1}; returns the detected bit sequence.
// n_bits is the number of data bits (the remaining samples are treated as
// the zero-padded tail).
std::vector<std::uint8_t> mlse_viterbi(const std::vector<double>& received,
                                       const std::vector<double>& taps, std::size_t n_bits,
                                       double level0, double level1);

// Symbol-by-symbol slicer: bit = 1 iff sample > cursor_gain (l0 + l1)/2;
// the exact threshold decides 0.
std::vector<std::uint8_t> threshold_detect(const std::vector<double>& received,
                                           double cursor_gain, double level0, double level1);

std::vector<double> apply_fir(const std::vector<double>& x, const std::vector<double>& coeffs);

} // namespace irsfso
