// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#include "irsfso/equalize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace irsfso {

namespace {

// Tall convolution matrix: (conv(w, h))[i] = (H w)[i].
Eigen::MatrixXd conv_matrix(const std::vector<double>& h, int n_eq) {
    const int L = static_cast<int>(h.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_eq + L - 1, n_eq);
    for (int j = 0; j < n_eq; ++j)
        for (int i = 0; i < L; ++i)
            m(j + i, j) = h[static_cast<std::size_t>(i)];
    return m;
}

void check_taps(const std::vector<double>& taps) {
    bool nonzero = false;
    for (double v : taps)
        nonzero |= v != 0.0;
    if (taps.empty() || !nonzero)
        throw std::invalid_argument("equalizer design needs a nonzero channel");
}

} // namespace

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty())
        return {};
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

std::vector<double> apply_fir(const std::vector<double>& x, const std::vector<double>& coeffs) {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t m = 0; m < x.size(); ++m) {
        double acc = 0.0;
        const std::size_t i_hi = std::min(coeffs.size() - 1, m);
        for (std::size_t i = 0; i <= i_hi; ++i)
            acc += coeffs[i] * x[m - i];
        y[m] = acc;
    }
    return y;
}

LinearEqualizer design_zf(const std::vector<double>& taps, int n_eq, int decision_delay) {
    check_taps(taps);
    if (n_eq < 1)
        throw std::invalid_argument("design_zf: n_eq must be >= 1");

    const Eigen::MatrixXd H = conv_matrix(taps, n_eq);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(H);
    const auto& R = qr.matrixR();
    const double r0 = std::abs(R(0, 0));
    const int n = static_cast<int>(H.cols());
    const double rn = std::abs(R(n - 1, n - 1));
    const double cond = rn > 0.0 ? r0 / rn : std::numeric_limits<double>::infinity();
    if (qr.rank() < n || cond > 1e12)
        throw IllConditioned(cond);

    const int n_out = static_cast<int>(H.rows());
    auto solve_for = [&](int delay, Eigen::VectorXd& w, double& residual) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n_out);
        e(delay) = 1.0;
        w = qr.solve(e);
        residual = (H * w - e).norm();
    };

    LinearEqualizer eq;
    eq.kind = EqKind::ZF;
    Eigen::VectorXd w;
    double res;
    if (decision_delay >= 0) {
        if (decision_delay >= n_out)
            throw std::invalid_argument("design_zf: decision delay outside the response window");
        solve_for(decision_delay, w, res);
        eq.decision_delay = decision_delay;
    } else {
        double best = std::numeric_limits<double>::infinity();
        Eigen::VectorXd best_w;
        int best_d = 0;
        for (int d = 0; d < n_out; ++d) {
            solve_for(d, w, res);
            if (res < best) {
                best = res;
                best_w = w;
                best_d = d;
            }
        }
        w = best_w;
        res = best;
        eq.decision_delay = best_d;
    }
    eq.coeffs.assign(w.data(), w.data() + w.size());
    eq.design_metric = res;
    return eq;
}

LinearEqualizer design_mmse(const std::vector<double>& taps, int n_eq, double noise_var,
                            double signal_var, int decision_delay) {
    check_taps(taps);
    if (n_eq < 1)
        throw std::invalid_argument("design_mmse: n_eq must be >= 1");
    if (noise_var < 0.0 || signal_var <= 0.0)
        throw std::invalid_argument("design_mmse: bad variances");

    const Eigen::MatrixXd H = conv_matrix(taps, n_eq);
    const int n_out = static_cast<int>(H.rows());
    Eigen::MatrixXd A = signal_var * (H.transpose() * H);
    A.diagonal().array() += noise_var;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(A);

    auto solve_for = [&](int delay, Eigen::VectorXd& w, double& mse) {
        const Eigen::VectorXd p = signal_var * H.row(delay).transpose();
        w = ldlt.solve(p);
        mse = signal_var - p.dot(w);
    };

    LinearEqualizer eq;
    eq.kind = EqKind::MMSE;
    Eigen::VectorXd w;
    double mse;
    if (decision_delay >= 0) {
        if (decision_delay >= n_out)
            throw std::invalid_argument("design_mmse: decision delay outside the response window");
        solve_for(decision_delay, w, mse);
        eq.decision_delay = decision_delay;
    } else {
        double best = std::numeric_limits<double>::infinity();
        Eigen::VectorXd best_w;
        int best_d = 0;
        for (int d = 0; d < n_out; ++d) {
            solve_for(d, w, mse);
            if (mse < best) {
                best = mse;
                best_w = w;
                best_d = d;
            }
        }
        w = best_w;
        mse = best;
        eq.decision_delay = best_d;
    }
    eq.coeffs.assign(w.data(), w.data() + w.size());
    eq.design_metric = mse;
    return eq;
}

namespace {

// Minimum-phase equivalent of a real FIR response: reflect the zeros of
// sum_k h[k] x^k that lie inside the unit disk (in x = z^{-1}) to their
// conjugate-inverse positions, rebuild, and rescale to the original energy.
std::vector<double> minimum_phase_equivalent(const std::vector<double>& h) {
    const int L = static_cast<int>(h.size());
    if (L == 1)
        return h;

    // Roots via the companion matrix of the monic polynomial.
    const double lead = h[static_cast<std::size_t>(L - 1)];
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(L - 1, L - 1);
    for (int i = 1; i < L - 1; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < L - 1; ++i)
        comp(i, L - 2) = -h[static_cast<std::size_t>(i)] / lead;
    const Eigen::VectorXcd roots = comp.eigenvalues();

    std::vector<std::complex<double>> flipped(static_cast<std::size_t>(L - 1));
    for (int i = 0; i < L - 1; ++i) {
        const std::complex<double> r = roots(i);
        flipped[static_cast<std::size_t>(i)] =
            std::abs(r) < 1.0 ? 1.0 / std::conj(r) : r;
    }
    // Expand prod (x - r_i).
    std::vector<std::complex<double>> poly{1.0};
    for (const auto& r : flipped) {
        std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= poly[k] * r;
        }
        poly = std::move(next);
    }
    std::vector<double> m(static_cast<std::size_t>(L));
    for (int k = 0; k < L; ++k)
        m[static_cast<std::size_t>(k)] = poly[static_cast<std::size_t>(k)].real();
    // Same magnitude response implies the same energy; rescale and fix the
    // cursor sign.
    double eh = 0.0, em = 0.0;
    for (double v : h)
        eh += v * v;
    for (double v : m)
        em += v * v;
    double g = std::sqrt(eh / em);
    if (m[0] < 0.0)
        g = -g;
    for (double& v : m)
        v *= g;
    return m;
}

} // namespace

DfeEqualizer design_zf_dfe(const std::vector<double>& taps, int n_ff, int n_fb) {
    check_taps(taps);
    if (n_ff < 1)
        throw std::invalid_argument("design_zf_dfe: n_ff must be >= 1");
    if (n_fb < 0)
        n_fb = static_cast<int>(taps.size()) - 1;

    const int L = static_cast<int>(taps.size());
    const int n_out = n_ff + L - 1;

    // Whiten toward the minimum-phase equivalent: the feedforward filter is
    // the least-squares map from the channel onto the min-phase response at
    // the best delay, so precursors vanish and postcursors decay.
    const std::vector<double> mph = minimum_phase_equivalent(taps);
    const Eigen::MatrixXd H = conv_matrix(taps, n_ff);
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(H);

    double best_res = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_w;
    int best_delay = -1;
    for (int delay = 0; delay < n_ff; ++delay) {
        Eigen::VectorXd target = Eigen::VectorXd::Zero(n_out);
        for (int k = 0; k < L && delay + k < n_out; ++k)
            target(delay + k) = mph[static_cast<std::size_t>(k)];
        const Eigen::VectorXd w = qr.solve(target);
        const double res = (H * w - target).norm();
        if (res < best_res) {
            best_res = res;
            best_w = w;
            best_delay = delay;
        }
    }
    if (best_delay < 0)
        throw IllConditioned(std::numeric_limits<double>::infinity());

    std::vector<double> wff(best_w.data(), best_w.data() + best_w.size());
    std::vector<double> c = convolve(wff, taps);
    const double cursor = c[static_cast<std::size_t>(best_delay)];
    double tap_peak = 0.0;
    for (double v : taps)
        tap_peak = std::max(tap_peak, std::abs(v));
    if (!(std::abs(cursor) > 1e-9 * tap_peak))
        throw IllConditioned(std::numeric_limits<double>::infinity());
    for (double& v : wff)
        v /= cursor;

    DfeEqualizer dfe;
    dfe.feedforward = std::move(wff);
    dfe.decision_delay = best_delay;
    // Feedback equals the realized postcursor so correct past decisions
    // cancel it exactly.
    c = convolve(dfe.feedforward, taps);
    dfe.feedback.assign(static_cast<std::size_t>(n_fb), 0.0);
    for (int j = 0; j < n_fb; ++j) {
        const int m = best_delay + 1 + j;
        if (m < n_out)
            dfe.feedback[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(m)];
    }
    return dfe;
}

std::vector<std::uint8_t> mlse_viterbi(const std::vector<double>& received,
                                       const std::vector<double>& taps, std::size_t n_bits,
                                       double level0, double level1) {
    const int L = static_cast<int>(taps.size());
    if (L < 1)
        throw std::invalid_argument("mlse_viterbi: empty channel");
    if (L > 16)
        throw StateSpaceTooLarge();
    if (L == 1) {
        // No memory: per-sample ML decision.
        std::vector<std::uint8_t> bits(n_bits, 0);
        for (std::size_t m = 0; m < n_bits && m < received.size(); ++m) {
            const double d0 = received[m] - taps[0] * level0;
            const double d1 = received[m] - taps[0] * level1;
            bits[m] = d1 * d1 < d0 * d0 ? 1 : 0;
        }
        return bits;
    }
    const int nu = L - 1;
    const std::size_t n_states = std::size_t{1} << nu;
    const std::size_t n_patterns = std::size_t{1} << L;
    const std::size_t n_steps = std::min(received.size(), n_bits + static_cast<std::size_t>(nu));
    if (n_bits == 0)
        return {};

    // pred[p]: expected sample when pattern bit l is symbol a[m-l].
    std::vector<double> pred(n_patterns, 0.0);
    for (std::size_t p = 0; p < n_patterns; ++p) {
        double acc = 0.0;
        for (int l = 0; l < L; ++l)
            acc += taps[static_cast<std::size_t>(l)] * (((p >> l) & 1u) ? level1 : level0);
        pred[p] = acc;
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> metric(n_states, kInf), next(n_states, kInf);
    metric[0] = 0.0; // transmission starts from an all-zeros history

    // Packed predecessor choices: bit = 1 when the high predecessor won.
    const std::size_t words_per_step = (n_states + 63) / 64;
    std::vector<std::uint64_t> choice(words_per_step * n_steps, 0);

    const std::size_t high_bit = n_states >> 1; // dropped-history bit
    for (std::size_t m = 0; m < n_steps; ++m) {
        const double u = m < received.size() ? received[m] : 0.0;
        const bool tail = m >= n_bits; // forced zero bits after the data
        std::fill(next.begin(), next.end(), kInf);
        std::uint64_t* ch = choice.data() + m * words_per_step;
        for (std::size_t ns = 0; ns < n_states; ++ns) {
            const std::size_t b = ns & 1u;
            if (tail && b)
                continue;
            const std::size_t base = ns >> 1;
            const std::size_t p_lo = (base << 1) | b;
            const std::size_t p_hi = ((base | high_bit) << 1) | b;
            const double d_lo = u - pred[p_lo];
            const double d_hi = u - pred[p_hi];
            const double m_lo = metric[base] + d_lo * d_lo;
            const double m_hi = metric[base | high_bit] + d_hi * d_hi;
            const bool hi_won = m_hi < m_lo;
            next[ns] = hi_won ? m_hi : m_lo;
            if (hi_won)
                ch[ns >> 6] |= std::uint64_t{1} << (ns & 63u);
        }
        metric.swap(next);
    }

    // The forced tail drives the survivor to state 0; with a truncated
    // observation any state may win.
    std::size_t state = 0;
    double best_metric = metric[0];
    for (std::size_t s = 1; s < n_states; ++s)
        if (metric[s] < best_metric) {
            best_metric = metric[s];
            state = s;
        }

    std::vector<std::uint8_t> bits(n_bits, 0);
    for (std::size_t m = n_steps; m-- > 0;) {
        const std::uint64_t* ch = choice.data() + m * words_per_step;
        const std::size_t b = state & 1u;
        if (m < n_bits)
            bits[m] = static_cast<std::uint8_t>(b);
        const bool hi = (ch[state >> 6] >> (state & 63u)) & 1u;
        std::size_t prev = state >> 1;
        if (nu > 0 && hi)
            prev |= high_bit;
        state = prev;
    }
    return bits;
}

std::vector<std::uint8_t> threshold_detect(const std::vector<double>& received,
                                           double cursor_gain, double level0, double level1) {
    if (!(cursor_gain > 0.0))
        throw std::invalid_argument("threshold_detect: cursor gain must be > 0");
    const double thr = cursor_gain * 0.5 * (level0 + level1);
    std::vector<std::uint8_t> bits(received.size(), 0);
    for (std::size_t i = 0; i < received.size(); ++i)
        bits[i] = received[i] > thr ? 1 : 0;
    return bits;
}

} // namespace irsfso
