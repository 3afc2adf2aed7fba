// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

#include <cmath>
#include <stdexcept>

#include "irsfso/constants.hpp"

namespace irsfso {

// Gaussian source beam constants.
template <typename Scalar>
struct BeamParams {
    Scalar w0 = Scalar(1e-3);       // beam waist (m)
    Scalar lambda = Scalar(1550e-9);// wavelength (m)
    Scalar P0 = Scalar(5e-5);       // average transmit power (W)
    Scalar eta = Scalar(kFreeSpaceImpedance);

    Scalar wavenumber() const { return Scalar(2 * kPi) / lambda; }
    Scalar rayleigh_range() const { return Scalar(kPi) * w0 * w0 / lambda; }
    // Peak field at the waist, E0 = sqrt(4 eta P0 / (pi w0^2)).
    Scalar peak_field() const {
        using std::sqrt;
        return sqrt(Scalar(4) * eta * P0 / (Scalar(kPi) * w0 * w0));
    }

    void validate() const {
        if (!(w0 > Scalar(0)) || !(lambda > Scalar(0)) || !(P0 > Scalar(0)) || !(eta > Scalar(0)))
            throw std::invalid_argument("beam parameters must all be > 0");
    }
};

using BeamParamsd = BeamParams<double>;

// Beam quantities evaluated on the IRS plane for a beam that has travelled
// d_l and arrives under elevation theta_l. The oblique incidence stretches
// the footprint and the projected curvature along x by 1/sin(theta_l).
template <typename Scalar>
struct BeamAtIrs {
    Scalar w_dl;  // beamwidth w(d_l) (m)
    Scalar R_dl;  // wavefront curvature radius R(d_l) (m)
    Scalar psi0;  // Gouy phase atan(d_l / z_R) (rad)
    Scalar w_x;   // footprint semi-axis along x (m)
    Scalar w_y;   // footprint semi-axis along y (m)
    Scalar R_x;   // projected curvature along x (m)
    Scalar R_y;   // projected curvature along y (m)
};

using BeamAtIrsd = BeamAtIrs<double>;

template <typename Scalar>
BeamAtIrs<Scalar> beam_at_distance(const BeamParams<Scalar>& beam, Scalar d_l, Scalar theta_l) {
    using std::atan;
    using std::sin;
    using std::sqrt;
    if (!(d_l > Scalar(0)))
        throw std::invalid_argument("beam_at_distance: d_l must be > 0");
    if (!(theta_l > Scalar(0) && theta_l <= Scalar(kPi / 2)))
        throw std::invalid_argument("beam_at_distance: theta_l must lie in (0, pi/2]");

    const Scalar z_r = beam.rayleigh_range();
    const Scalar ratio = d_l / z_r;
    BeamAtIrs<Scalar> at;
    at.w_dl = beam.w0 * sqrt(Scalar(1) + ratio * ratio);
    at.R_dl = d_l * (Scalar(1) + Scalar(1) / (ratio * ratio));
    at.psi0 = atan(ratio);
    const Scalar st = sin(theta_l);
    at.w_x = at.w_dl / st;
    at.w_y = at.w_dl;
    at.R_x = at.R_dl / (st * st);
    at.R_y = at.R_dl;
    return at;
}

// Incident Gaussian field on the IRS plane, split into magnitude and
// accumulated phase. The phase grows with k*d_l (~1e9 rad); callers reduce
// it modulo 2*pi only when forming the complex exponential.
template <typename Scalar>
struct IncidentField {
    Scalar amplitude; // |E_in| (V/m)
    Scalar phase;     // psi_in (rad), unwrapped
};

template <typename Scalar>
IncidentField<Scalar> incident_field(Scalar x, Scalar y, const BeamParams<Scalar>& beam,
                                     const BeamAtIrs<Scalar>& at, Scalar d_l, Scalar theta_l) {
    using std::cos;
    using std::exp;
    const Scalar k = beam.wavenumber();
    const Scalar gauss = exp(-(x * x) / (at.w_x * at.w_x) - (y * y) / (at.w_y * at.w_y));
    IncidentField<Scalar> f;
    f.amplitude = beam.peak_field() * beam.w0 / at.w_dl * gauss;
    f.phase = k * (d_l - x * cos(theta_l) + x * x / (Scalar(2) * at.R_x) +
                   y * y / (Scalar(2) * at.R_y)) -
              at.psi0;
    return f;
}

} // namespace irsfso
