// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.
//
// Three evaluations of the GML impulse response, in decreasing order of
// fidelity and cost:
//
//   cir_oracle_lemma1  — simple-layer line integral of the delayed
//                        Huygens-Fresnel field along iso-delay lines, with
//                        the exact reflected-path distance, then a lens
//                        quadrature. Reference for everything else.
//   cir_theorem1       — stationary-line reduction with the quadratic lens
//                        phases frozen at the lens center; 2-D quadrature
//                        over the equal-area square lens. Needs a2 != 0.
//   cir_corollary1     — in-plane closed form: truncated Gaussian.
//
// All three share one normalization: the delayed-field power collected by
// the lens is divided by the lens side length 2*a_tilde, which makes the
// time integral of h_gml equal the capture fraction h_LOS and matches the
// closed form. The passivity factor zeta^2 = lambda |a1| d_p sin(theta_l)
// enforces that convention's energy balance.

#include "irsfso/cir.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "irsfso/complex_erf.hpp"
#include "irsfso/quadrature.hpp"

namespace irsfso {

using cplx = std::complex<double>;

namespace {

constexpr cplx kImag{0.0, 1.0};

double zeta_in_effect(const LinkGeometryd& geom, const BeamParamsd& beam, const IrsParamsd& irs,
                      double a1) {
    if (irs.zeta_override)
        return *irs.zeta_override;
    if (a1 == 0.0)
        return 1.0;
    return std::sqrt(beam.lambda * std::abs(a1) * geom.d_p * std::sin(geom.theta_l));
}

// Symmetric sample grid: t[n-1-i] is the exact negation of t[i] so parity
// tests hold to the last bit.
std::vector<double> centered_grid(std::size_t n, double span) {
    std::vector<double> t(n);
    const std::size_t mid = n / 2;
    for (std::size_t i = 0; i < mid; ++i) {
        const double v = -span + 2.0 * span * static_cast<double>(i) /
                                     static_cast<double>(n - 1);
        t[i] = v;
        t[n - 1 - i] = -v;
    }
    t[mid] = 0.0;
    return t;
}

void require_phi_l_zero(const LinkGeometryd& geom) {
    if (std::abs(geom.phi_l) > 1e-12)
        throw std::invalid_argument(
            "CIR evaluation requires phi_l = 0 (the incident-phase model is written for a beam "
            "axis in the xz-plane)");
}

// Capture fraction along the lens y axis, h_LOS = erf(k a~ / (sqrt(2) w |b_y| d_p)).
double lens_capture_fraction(const LinkGeometryd& geom, const BeamParamsd& beam,
                             const BeamAtIrsd& at) {
    const double k = beam.wavenumber();
    const cplx b_y(1.0 / (at.w_y * at.w_y), k / (2.0 * at.R_y) + k / (2.0 * geom.d_p));
    const double a_tilde = equivalent_square_half_side(geom.lens_radius);
    return std::erf(k * a_tilde / (std::sqrt(2.0) * at.w_dl * std::abs(b_y) * geom.d_p));
}

template <typename F>
void parallel_for(std::size_t n, F&& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += n_threads)
                body(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace

double Cir::peak() const {
    if (delta_channel)
        return delta_gain;
    double m = 0.0;
    for (double v : h)
        m = std::max(m, v);
    return m;
}

double Cir::integral() const {
    if (delta_channel)
        return delta_gain;
    if (h.size() < 2)
        return 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < h.size(); ++i)
        acc += 0.5 * (h[i] + h[i - 1]) * (t_rel[i] - t_rel[i - 1]);
    return acc;
}

double passivity_zeta(const LinkGeometryd& geom, const BeamParamsd& beam) {
    const auto profile = delay_linear(geom);
    if (profile.a1 == 0.0)
        throw NondispersiveNormalization();
    return std::sqrt(beam.lambda * std::abs(profile.a1) * geom.d_p * std::sin(geom.theta_l));
}

// ---------------------------------------------------------------------------
// Corollary 1: in-plane closed form.

Corollary1Params corollary1_params(const LinkGeometryd& geom, const BeamParamsd& beam,
                                   const IrsParamsd& irs) {
    geom.validate();
    beam.validate();
    irs.validate();
    require_phi_l_zero(geom);
    if (!geom.in_plane(1e-9))
        throw std::invalid_argument("corollary1 needs in-plane geometry (phi_l = 0, phi_p = pi)");

    const auto at = beam_at_distance(beam, geom.d_l, geom.theta_l);
    const auto profile = delay_linear(geom, beam, at);

    Corollary1Params p;
    p.a1 = profile.a1;
    p.tau0 = profile.tau0;
    p.h_los = lens_capture_fraction(geom, beam, at);
    p.support_half = irs.length_x * std::abs(profile.a1) / 2.0;
    if (profile.a1 != 0.0) {
        p.c_tau = 2.0 / (profile.a1 * profile.a1 * at.w_x * at.w_x);
        const double zeta_prop = std::sqrt(beam.lambda * std::abs(profile.a1) * geom.d_p *
                                           std::sin(geom.theta_l));
        p.zeta = zeta_in_effect(geom, beam, irs, profile.a1);
        const double ratio = p.zeta / zeta_prop;
        p.gain_scale = ratio * ratio;
    } else {
        p.c_tau = 0.0;
        p.zeta = irs.zeta_override.value_or(1.0);
        p.gain_scale = 1.0;
    }
    return p;
}

double Corollary1Params::peak() const {
    return gain_scale * std::sqrt(c_tau / kPi) * h_los;
}

double Corollary1Params::value(double t_rel) const {
    if (!dispersive())
        throw NondispersiveNormalization();
    if (std::abs(t_rel) > support_half)
        return 0.0;
    return peak() * std::exp(-c_tau * t_rel * t_rel);
}

double Corollary1Params::integral_support() const {
    if (!dispersive())
        return gain_scale * h_los;
    return gain_scale * h_los * std::erf(std::sqrt(c_tau) * support_half);
}

std::complex<double> freq_response_corollary1(const Corollary1Params& p, double f) {
    if (!p.dispersive())
        return p.gain_scale * p.h_los;

    // Fourier transform of the truncated Gaussian, referenced to tau0:
    // H(f) = h_LOS e^{-pi^2 f^2 / c_tau} Re erf(A + iB),
    // A = sqrt(c_tau) * support_half, B = pi f / sqrt(c_tau). The sign is
    // fixed by H(0) = integral of h_gml > 0.
    const double sc = std::sqrt(p.c_tau);
    const double A = sc * p.support_half;
    const double B = kPi * f / sc;
    const double scale = p.gain_scale * p.h_los;
    if (std::abs(B) <= 25.0) {
        const double env = std::exp(-B * B);
        return scale * env * complex_erf({A, B}).real();
    }
    // Far tail: e^{-B^2} erf(A+iB) would pair an underflow with an
    // overflow; use erf(z) ~ 1 - e^{-z^2}/(sqrt(pi) z) with the envelope
    // folded into the exponent.
    const cplx z(A, std::abs(B));
    const cplx ez = std::exp(cplx(-A * A - B * B, -2.0 * A * std::abs(B)));
    const cplx tail = ez / (std::sqrt(kPi) * z) * (1.0 - 0.5 / (z * z) + 0.75 / (z * z * z * z));
    const double env = std::exp(-B * B); // underflows to 0; kept for the erf->1 part
    return scale * (env - tail.real());
}

Cir cir_corollary1(const LinkGeometryd& geom, const BeamParamsd& beam, const IrsParamsd& irs,
                   std::size_t n_samples, double pad) {
    const auto p = corollary1_params(geom, beam, irs);
    Cir cir;
    cir.method = CirMethod::Corollary1;
    cir.tau0 = p.tau0;
    if (!p.dispersive()) {
        cir.delta_channel = true;
        cir.delta_gain = p.gain_scale * p.h_los;
        return cir;
    }
    if (n_samples < 3)
        n_samples = 3;
    if (n_samples % 2 == 0)
        ++n_samples;
    cir.t_rel = centered_grid(n_samples, p.support_half * pad);
    cir.h.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        cir.h[i] = p.value(cir.t_rel[i]);
    return cir;
}

// ---------------------------------------------------------------------------
// Theorem 1: general geometry, a2 != 0.

Theorem1Params theorem1_params(const LinkGeometryd& geom, const BeamParamsd& beam,
                               const IrsParamsd& irs) {
    geom.validate();
    beam.validate();
    irs.validate();
    require_phi_l_zero(geom);

    const auto at = beam_at_distance(beam, geom.d_l, geom.theta_l);
    const auto profile = delay_linear(geom, beam, at);
    // |a2| v_l is the y direction cosine; below ~1e-9 the geometry is
    // numerically in-plane and the parametrization below degenerates.
    if (std::abs(profile.a2) * geom.v_l < 1e-9)
        throw std::domain_error(
            "cir_theorem1 needs a2 != 0; in-plane geometries use cir_corollary1");

    const double k = beam.wavenumber();
    const double ct = std::cos(geom.theta_p), st = std::sin(geom.theta_p);
    const double cp = std::cos(geom.phi_p), sp = std::sin(geom.phi_p);

    Theorem1Params p;
    p.a1 = profile.a1;
    p.a2 = profile.a2;
    p.rho = profile.a1 / profile.a2;
    p.tau0 = profile.tau0;
    p.support_half = std::abs(profile.a1) * irs.length_x / 2.0 +
                     std::abs(profile.a2) * irs.length_y / 2.0;
    p.a_tilde = equivalent_square_half_side(geom.lens_radius);
    p.zeta = zeta_in_effect(geom, beam, irs, profile.a1);

    // Quadratic phase coefficients with the lens-center approximations
    // x_o^2/d_p^2 ~ cos^2(phi_p)cos^2(theta_p) etc.
    p.c1 = cplx(1.0 / (at.w_x * at.w_x),
                k / (2.0 * geom.d_p) * (1.0 - cp * cp * ct * ct) + k / (2.0 * at.R_x));
    p.c2 = cplx(1.0 / (at.w_y * at.w_y),
                k / (2.0 * geom.d_p) * (1.0 - sp * sp * ct * ct) + k / (2.0 * at.R_y));
    p.c5 = -kImag * (k / geom.d_p) * sp * cp * ct * ct;
    p.a_s = p.c1 + p.rho * p.rho * p.c2 - p.rho * p.c5;
    if (!(p.a_s.real() > 0.0))
        throw std::domain_error("cir_theorem1: Re(a_s) <= 0, Gaussian line integral diverges");
    // 2 c2 - c0^2/(2 a_s) in the cancellation-free form (4 c1 c2 - c5^2)/(2 a_s).
    p.sigma_line = (4.0 * p.c1 * p.c2 - p.c5 * p.c5) / (2.0 * p.a_s);

    // [c3, c4]^T = M r_p: linear lens-coordinate phase coefficients.
    const cplx pre = -kImag * k / geom.d_p;
    p.m00 = pre * cp * st;
    p.m01 = pre * (-sp);
    p.m10 = pre * sp * st;
    p.m11 = pre * cp;

    const double w2 = at.w_dl * at.w_dl;
    const double c_h = 2.0 * p.zeta * p.zeta /
                       (beam.lambda * beam.lambda * geom.d_p * geom.d_p * profile.a2 * profile.a2 *
                        std::abs(p.a_s) * w2);
    p.amp = c_h / (2.0 * p.a_tilde);
    return p;
}

double cir_theorem1_value(const Theorem1Params& p, double t_rel, double rel_tol) {
    if (std::abs(t_rel) > p.support_half)
        return 0.0;
    const double y0 = t_rel / p.a2;
    const cplx y_quad = y0 * y0 * p.sigma_line;

    auto integrand = [&](double xp, double yp) {
        const cplx c3 = p.m00 * xp + p.m01 * yp;
        const cplx c4 = p.m10 * xp + p.m11 * yp;
        const cplx u = c3 - p.rho * c4;
        const cplx y_lin = (2.0 * p.c1 * c4 + 2.0 * p.rho * p.c2 * c3 -
                            p.c5 * (c3 + p.rho * c4)) / p.a_s;
        const cplx expo = u * u / (2.0 * p.a_s) - y_quad - y0 * y_lin;
        return std::exp(expo.real());
    };

    double prev = 0.0;
    for (std::size_t order = 16; order <= 256; order *= 2) {
        const GaussRule g = gauss_legendre(order, -p.a_tilde, p.a_tilde);
        double acc = 0.0;
        for (std::size_t i = 0; i < order; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < order; ++j)
                row += g.weights[j] * integrand(g.nodes[i], g.nodes[j]);
            acc += g.weights[i] * row;
        }
        if (order > 16 && std::abs(acc - prev) <= rel_tol * std::abs(acc))
            return p.amp * acc;
        prev = acc;
    }
    return p.amp * prev;
}

Cir cir_theorem1(const LinkGeometryd& geom, const BeamParamsd& beam, const IrsParamsd& irs,
                 std::size_t n_samples, double pad, double rel_tol) {
    const auto p = theorem1_params(geom, beam, irs);
    if (n_samples < 3)
        n_samples = 3;
    if (n_samples % 2 == 0)
        ++n_samples;
    Cir cir;
    cir.method = CirMethod::Theorem1;
    cir.tau0 = p.tau0;
    cir.t_rel = centered_grid(n_samples, p.support_half * pad);
    cir.h.assign(n_samples, 0.0);
    parallel_for(n_samples, [&](std::size_t i) {
        cir.h[i] = cir_theorem1_value(p, cir.t_rel[i], rel_tol);
    });
    return cir;
}

// ---------------------------------------------------------------------------
// Lemma 1 oracle.

namespace {

struct OracleContext {
    LinkGeometryd geom;
    BeamParamsd beam;
    BeamAtIrsd at;
    PhaseProfiled irs_phase;
    Eigen::Matrix3d rot;
    double k;
    double a1, a2, norm_a;
    double tau0;
    double zeta;
    double half_lx, half_ly;
    double a_tilde;
    double support_half;
};

OracleContext make_oracle_context(const LinkGeometryd& geom, const BeamParamsd& beam,
                                  const IrsParamsd& irs) {
    geom.validate();
    beam.validate();
    irs.validate();
    require_phi_l_zero(geom);

    OracleContext ctx;
    ctx.geom = geom;
    ctx.beam = beam;
    ctx.at = beam_at_distance(beam, geom.d_l, geom.theta_l);
    ctx.irs_phase = linear_phase_profile(geom, irs.phi0);
    ctx.rot = rotation_matrix(geom.theta_p, geom.phi_p);
    ctx.k = beam.wavenumber();
    const auto profile = delay_linear(geom, beam, ctx.at);
    ctx.a1 = profile.a1;
    ctx.a2 = profile.a2;
    ctx.norm_a = std::hypot(profile.a1, profile.a2);
    if (ctx.norm_a == 0.0)
        throw NondispersiveNormalization();
    ctx.tau0 = profile.tau0;
    ctx.zeta = zeta_in_effect(geom, beam, irs, profile.a1);
    ctx.half_lx = irs.length_x / 2.0;
    ctx.half_ly = irs.length_y / 2.0;
    ctx.a_tilde = equivalent_square_half_side(geom.lens_radius);
    ctx.support_half = std::abs(profile.a1) * irs.length_x / 2.0 +
                       std::abs(profile.a2) * irs.length_y / 2.0;
    return ctx;
}

// Clip the parameter interval of the ray p0 + s*dir to |x| <= hx, |y| <= hy.
bool clip_segment(double p0x, double p0y, double dx, double dy, double hx, double hy, double& s_lo,
                  double& s_hi) {
    s_lo = -std::numeric_limits<double>::infinity();
    s_hi = std::numeric_limits<double>::infinity();
    const double px[2] = {p0x, p0y};
    const double dd[2] = {dx, dy};
    const double hh[2] = {hx, hy};
    for (int axis = 0; axis < 2; ++axis) {
        if (dd[axis] == 0.0) {
            if (std::abs(px[axis]) > hh[axis])
                return false;
            continue;
        }
        double t1 = (-hh[axis] - px[axis]) / dd[axis];
        double t2 = (hh[axis] - px[axis]) / dd[axis];
        if (t1 > t2)
            std::swap(t1, t2);
        s_lo = std::max(s_lo, t1);
        s_hi = std::min(s_hi, t2);
    }
    return s_lo < s_hi;
}

// Simple-layer line integral of |E_in| e^{-j phi} along the iso-delay line
// tau(r) = tau0 + t_rel, seen from the lens point r_o (global coordinates).
// The phase keeps the exact reflected-path distance.
cplx oracle_line_integral(const OracleContext& ctx, double t_rel, const Eigen::Vector3d& r_o,
                          double rel_tol) {
    const double inv_a2n = 1.0 / (ctx.norm_a * ctx.norm_a);
    const double p0x = t_rel * ctx.a1 * inv_a2n;
    const double p0y = t_rel * ctx.a2 * inv_a2n;
    const double ux = -ctx.a2 / ctx.norm_a;
    const double uy = ctx.a1 / ctx.norm_a;

    double s_lo, s_hi;
    if (!clip_segment(p0x, p0y, ux, uy, ctx.half_lx, ctx.half_ly, s_lo, s_hi))
        return {};
    {
        // Restrict to where the incident Gaussian still matters.
        double e_lo, e_hi;
        if (!clip_segment(p0x, p0y, ux, uy, 6.5 * ctx.at.w_x, 6.5 * ctx.at.w_y, e_lo, e_hi))
            return {};
        s_lo = std::max(s_lo, e_lo);
        s_hi = std::min(s_hi, e_hi);
        if (!(s_lo < s_hi))
            return {};
    }

    auto phase_at = [&](double s) {
        const double x = p0x + s * ux;
        const double y = p0y + s * uy;
        const double dxg = r_o.x() - x, dyg = r_o.y() - y, dzg = r_o.z();
        const double dist = std::sqrt(dxg * dxg + dyg * dyg + dzg * dzg);
        const auto in = incident_field(x, y, ctx.beam, ctx.at, ctx.geom.d_l, ctx.geom.theta_l);
        return ctx.k * dist + ctx.irs_phase.phase(ctx.k, x, y) + in.phase;
    };
    auto integrand = [&](double s) {
        const double x = p0x + s * ux;
        const double y = p0y + s * uy;
        const double dxg = r_o.x() - x, dyg = r_o.y() - y, dzg = r_o.z();
        const double dist = std::sqrt(dxg * dxg + dyg * dyg + dzg * dzg);
        const auto in = incident_field(x, y, ctx.beam, ctx.at, ctx.geom.d_l, ctx.geom.theta_l);
        const double phi =
            std::remainder(ctx.k * dist + ctx.irs_phase.phase(ctx.k, x, y) + in.phase, 2.0 * kPi);
        return std::polar(in.amplitude, -phi);
    };

    // Seed the subdivision from the oscillation density so the first
    // Simpson estimates do not alias the phase.
    double max_rate = 0.0;
    const double ds = (s_hi - s_lo) / 8.0;
    double prev_phi = phase_at(s_lo);
    for (int i = 1; i <= 8; ++i) {
        const double cur = phase_at(s_lo + i * ds);
        max_rate = std::max(max_rate, std::abs(cur - prev_phi) / ds);
        prev_phi = cur;
    }
    const double cycles = max_rate * (s_hi - s_lo) / (2.0 * kPi);
    const int panels = std::clamp(static_cast<int>(3.0 * cycles) + 8, 8, 400000);

    // Absolute tolerance against the smooth envelope integral.
    double envelope = 0.0;
    {
        const GaussRule g = gauss_legendre(16, s_lo, s_hi);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double x = p0x + g.nodes[i] * ux;
            const double y = p0y + g.nodes[i] * uy;
            envelope += g.weights[i] *
                        incident_field(x, y, ctx.beam, ctx.at, ctx.geom.d_l, ctx.geom.theta_l)
                            .amplitude;
        }
    }
    if (envelope <= 0.0)
        return {};
    const double abs_tol = rel_tol * envelope * 0.1;
    return adaptive_simpson(integrand, s_lo, s_hi, abs_tol, panels);
}

double oracle_value_ctx(const OracleContext& ctx, const OracleOptions& opt, double t_rel) {
    if (std::abs(t_rel) > ctx.support_half)
        return 0.0;

    // |E_rx|^2 = (zeta / (lambda d_p |grad tau|))^2 |line integral|^2.
    const double field_scale = ctx.zeta / (ctx.beam.lambda * ctx.geom.d_p * ctx.norm_a);
    const double power_norm = 1.0 / (2.0 * ctx.beam.eta * ctx.beam.P0 * 2.0 * ctx.a_tilde);

    double acc = 0.0;
    if (!opt.circular_mask) {
        const GaussRule gx = gauss_legendre(static_cast<std::size_t>(opt.lens_nx), -ctx.a_tilde,
                                            ctx.a_tilde);
        const GaussRule gy = gauss_legendre(static_cast<std::size_t>(opt.lens_ny), -ctx.a_tilde,
                                            ctx.a_tilde);
        for (int i = 0; i < opt.lens_nx; ++i) {
            for (int j = 0; j < opt.lens_ny; ++j) {
                Eigen::Vector3d r_o =
                    ctx.rot * Eigen::Vector3d(gx.nodes[i], gy.nodes[j], ctx.geom.d_p);
                const cplx line = oracle_line_integral(ctx, t_rel, r_o, opt.line_rel_tol);
                acc += gx.weights[i] * gy.weights[j] * std::norm(line);
            }
        }
    } else {
        // True circular lens: per y row, integrate x over the chord.
        const double a = ctx.geom.lens_radius;
        const GaussRule gy = gauss_legendre(static_cast<std::size_t>(opt.lens_ny), -a, a);
        for (int j = 0; j < opt.lens_ny; ++j) {
            const double chord = std::sqrt(std::max(0.0, a * a - gy.nodes[j] * gy.nodes[j]));
            if (chord == 0.0)
                continue;
            const GaussRule gx = gauss_legendre(static_cast<std::size_t>(opt.lens_nx), -chord,
                                                chord);
            for (int i = 0; i < opt.lens_nx; ++i) {
                Eigen::Vector3d r_o =
                    ctx.rot * Eigen::Vector3d(gx.nodes[i], gy.nodes[j], ctx.geom.d_p);
                const cplx line = oracle_line_integral(ctx, t_rel, r_o, opt.line_rel_tol);
                acc += gx.weights[i] * gy.weights[j] * std::norm(line);
            }
        }
    }
    return field_scale * field_scale * power_norm * acc;
}

} // namespace

double cir_oracle_value(const LinkGeometryd& geom, const BeamParamsd& beam, const IrsParamsd& irs,
                        double t_rel, const OracleOptions& opt) {
    const OracleContext ctx = make_oracle_context(geom, beam, irs);
    return oracle_value_ctx(ctx, opt, t_rel);
}

Cir cir_oracle_lemma1(const LinkGeometryd& geom, const BeamParamsd& beam, const IrsParamsd& irs,
                      std::size_t n_samples, double pad, const OracleOptions& opt) {
    const OracleContext ctx = make_oracle_context(geom, beam, irs);
    if (n_samples < 3)
        n_samples = 3;
    if (n_samples % 2 == 0)
        ++n_samples;
    Cir cir;
    cir.method = CirMethod::OracleLemma1;
    cir.tau0 = ctx.tau0;
    cir.t_rel = centered_grid(n_samples, ctx.support_half * pad);
    cir.h.assign(n_samples, 0.0);
    parallel_for(n_samples, [&](std::size_t i) {
        cir.h[i] = oracle_value_ctx(ctx, opt, cir.t_rel[i]);
    });
    return cir;
}

// ---------------------------------------------------------------------------

double effective_delay_spread_3db(const Cir& cir) {
    if (cir.delta_channel)
        return 0.0;
    if (cir.h.size() < 3)
        throw EmptyCir();
    const double pk = cir.peak();
    if (!(pk > 0.0))
        throw EmptyCir();
    const double level = 0.5 * pk;

    const auto& t = cir.t_rel;
    const auto& h = cir.h;
    double left = t.front(), right = t.back();
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
        if (h[i] < level && h[i + 1] >= level) {
            left = t[i] + (t[i + 1] - t[i]) * (level - h[i]) / (h[i + 1] - h[i]);
            break;
        }
        if (h[i] >= level) {
            left = t[i];
            break;
        }
    }
    for (std::size_t i = h.size() - 1; i > 0; --i) {
        if (h[i] < level && h[i - 1] >= level) {
            right = t[i] - (t[i] - t[i - 1]) * (level - h[i]) / (h[i - 1] - h[i]);
            break;
        }
        if (h[i] >= level) {
            right = t[i];
            break;
        }
    }
    return std::max(0.0, right - left);
}

} // namespace irsfso
