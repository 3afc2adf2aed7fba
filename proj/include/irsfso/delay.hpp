// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "irsfso/beam.hpp"
#include "irsfso/geometry.hpp"
#include "irsfso/irs.hpp"

namespace irsfso {

// How the bulk delay tau0 folds in the Gouy phase. The accumulated-phase
// delay divides every phase by k*v_l; GouyOverK applies that to psi0 as
// well (a sub-femtosecond correction), PaperLiteral subtracts psi0/v_l
// without the 1/k.
enum class Tau0Convention { GouyOverK, PaperLiteral };

enum class DelayKind { Linear, Quadratic };

// Arrival-delay profile tau(r) over the IRS plane, relative to the global
// coordinate origin at the IRS center.
template <typename Scalar>
struct DelayProfile {
    Scalar tau0;    // bulk delay (s)
    Scalar tau_los; // (d_l + d_p) / v_l (s)
    Scalar a1, a2;  // linear slopes (s/m)
    Eigen::Matrix<Scalar, 2, 1> c;  // = [a1, a2]
    Eigen::Matrix<Scalar, 2, 2> B;  // quadratic form (s/m^2); zero for Linear
    DelayKind kind = DelayKind::Linear;

    Scalar operator()(Scalar x, Scalar y) const {
        Eigen::Matrix<Scalar, 2, 1> r(x, y);
        Scalar t = tau0 + c.dot(r);
        if (kind == DelayKind::Quadratic)
            t += r.dot(B * r);
        return t;
    }
};

using DelayProfiled = DelayProfile<double>;

namespace detail {

template <typename Scalar>
Scalar linear_slope_x(const LinkGeometry<Scalar>& geom) {
    using std::cos;
    return -(cos(geom.phi_p) * cos(geom.theta_p) + cos(geom.phi_l) * cos(geom.theta_l)) / geom.v_l;
}

template <typename Scalar>
Scalar linear_slope_y(const LinkGeometry<Scalar>& geom) {
    using std::cos;
    using std::sin;
    return -(sin(geom.phi_l) * cos(geom.theta_l) + sin(geom.phi_p) * cos(geom.theta_p)) / geom.v_l;
}

} // namespace detail

// Bulk delay including the Gouy correction; tau_los dominates by nine
// orders of magnitude either way.
template <typename Scalar>
Scalar bulk_delay(const LinkGeometry<Scalar>& geom, const BeamParams<Scalar>& beam,
                  const BeamAtIrs<Scalar>& at, Tau0Convention conv = Tau0Convention::GouyOverK) {
    const Scalar tau_los = (geom.d_l + geom.d_p) / geom.v_l;
    if (conv == Tau0Convention::PaperLiteral)
        return tau_los - at.psi0 / geom.v_l;
    return tau_los - at.psi0 / (beam.wavenumber() * geom.v_l);
}

// Linear delay profile tau(r) = tau0 + a1 x + a2 y.
template <typename Scalar>
DelayProfile<Scalar> delay_linear(const LinkGeometry<Scalar>& geom) {
    DelayProfile<Scalar> p;
    p.tau_los = (geom.d_l + geom.d_p) / geom.v_l;
    p.tau0 = p.tau_los;
    p.a1 = detail::linear_slope_x(geom);
    p.a2 = detail::linear_slope_y(geom);
    p.c << p.a1, p.a2;
    p.B.setZero();
    p.kind = DelayKind::Linear;
    return p;
}

template <typename Scalar>
DelayProfile<Scalar> delay_linear(const LinkGeometry<Scalar>& geom, const BeamParams<Scalar>& beam,
                                  const BeamAtIrs<Scalar>& at,
                                  Tau0Convention conv = Tau0Convention::GouyOverK) {
    DelayProfile<Scalar> p = delay_linear(geom);
    p.tau0 = bulk_delay(geom, beam, at, conv);
    return p;
}

// Quadratic (Fresnel-regime) delay profile for a given observation point
// r_o on the lens, in global coordinates.
template <typename Scalar>
DelayProfile<Scalar> delay_quadratic(const LinkGeometry<Scalar>& geom,
                                     const BeamParams<Scalar>& beam, const BeamAtIrs<Scalar>& at,
                                     const Eigen::Matrix<Scalar, 3, 1>& r_o,
                                     Tau0Convention conv = Tau0Convention::GouyOverK) {
    using std::cos;
    DelayProfile<Scalar> p;
    p.tau_los = (geom.d_l + geom.d_p) / geom.v_l;
    p.tau0 = bulk_delay(geom, beam, at, conv);

    const Scalar xo = r_o.x(), yo = r_o.y();
    Eigen::Matrix<Scalar, 2, 1> a(xo / geom.d_p, yo / geom.d_p);
    Eigen::Matrix<Scalar, 2, 1> b(cos(geom.theta_l) * cos(geom.phi_l), Scalar(0));
    p.c = (-a - b) / geom.v_l;
    p.a1 = p.c.x();
    p.a2 = p.c.y();

    const Scalar dp2 = geom.d_p * geom.d_p;
    Eigen::Matrix<Scalar, 2, 2> r1;
    r1 << Scalar(1) - xo * xo / dp2, -xo * yo / dp2,
          -xo * yo / dp2, Scalar(1) - yo * yo / dp2;
    r1 /= Scalar(2) * geom.d_p;
    Eigen::Matrix<Scalar, 2, 2> r2;
    r2.setZero();
    r2(0, 0) = Scalar(1) / (Scalar(2) * at.R_x);
    r2(1, 1) = Scalar(1) / (Scalar(2) * at.R_y);
    p.B = (r1 + r2) / geom.v_l;
    p.kind = DelayKind::Quadratic;
    return p;
}

// Delay spread max tau - min tau over the centered IRS rectangle. Affine
// profiles have the closed form |a1| L_x + |a2| L_y; quadratic profiles
// fall back to a 101x101 grid search.
template <typename Scalar>
Scalar delay_spread(const DelayProfile<Scalar>& profile, const IrsParams<Scalar>& irs) {
    using std::abs;
    if (profile.kind == DelayKind::Linear)
        return abs(profile.a1) * irs.length_x + abs(profile.a2) * irs.length_y;

    constexpr int n = 101;
    Scalar lo = std::numeric_limits<Scalar>::infinity();
    Scalar hi = -lo;
    for (int i = 0; i < n; ++i) {
        const Scalar x = irs.length_x * (Scalar(i) / (n - 1) - Scalar(0.5));
        for (int j = 0; j < n; ++j) {
            const Scalar y = irs.length_y * (Scalar(j) / (n - 1) - Scalar(0.5));
            const Scalar t = profile(x, y);
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    return hi - lo;
}

// Smallest lens elevation for which the delay spread stays well below the
// symbol duration: cos(theta_p) - cos(theta_l) << T v_l / L_x.
template <typename Scalar>
Scalar nondispersive_theta_p_threshold(Scalar symbol_duration, Scalar length_x, Scalar theta_l,
                                       Scalar v_l = Scalar(kSpeedOfLightAir)) {
    using std::acos;
    using std::cos;
    const Scalar bound = symbol_duration * v_l / length_x + cos(theta_l);
    return acos(std::clamp(bound, Scalar(-1), Scalar(1)));
}

// Validity report for the Fresnel (intermediate) regime and for the linear
// delay approximation. Advisory: thresholds take ">>" as a factor of ten
// and violations produce warnings, never errors.
struct RegimeReport {
    double d_f = 0;        // Fresnel distance (x_e^2 + y_e^2) / (2 lambda)
    double x_e = 0, y_e = 0;
    bool fresnel_ok = false;        // d_p >= 10 d_f
    bool linear_lens_ok = false;    // a <= d_p / 10
    bool linear_irs_ok = false;     // L_i <= min(sqrt(2 d_l), sqrt(2 d_p)) / 10
    std::vector<std::string> warnings;
};

inline RegimeReport fresnel_check(const LinkGeometryd& geom, const IrsParamsd& irs,
                                  const BeamAtIrsd& at, double lambda) {
    RegimeReport rep;
    rep.x_e = std::min(irs.length_x / 2.0, at.w_x);
    rep.y_e = std::min(irs.length_y / 2.0, at.w_y);
    rep.d_f = (rep.x_e * rep.x_e + rep.y_e * rep.y_e) / (2.0 * lambda);
    rep.fresnel_ok = geom.d_p >= 10.0 * rep.d_f;
    if (!rep.fresnel_ok)
        rep.warnings.push_back("d_p < 10 d_f: outside the strict intermediate-regime criterion");

    rep.linear_lens_ok = geom.lens_radius <= geom.d_p / 10.0;
    if (!rep.linear_lens_ok)
        rep.warnings.push_back("lens radius not << d_p; linear delay profile may be inaccurate");

    const double cap = std::min(std::sqrt(2.0 * geom.d_l), std::sqrt(2.0 * geom.d_p)) / 10.0;
    rep.linear_irs_ok = irs.length_x <= cap && irs.length_y <= cap;
    if (!rep.linear_irs_ok)
        rep.warnings.push_back("IRS side not << sqrt(2 d); linear delay profile may be inaccurate");
    return rep;
}

} // namespace irsfso
