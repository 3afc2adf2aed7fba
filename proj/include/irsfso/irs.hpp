// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "irsfso/geometry.hpp"

namespace irsfso {

// IRS panel description. The channel model treats the surface as continuous;
// the element counts q_x, q_y are carried as metadata only.
template <typename Scalar>
struct IrsParams {
    Scalar length_x = Scalar(1); // L_x (m)
    Scalar length_y = Scalar(1); // L_y (m)
    Scalar phi0 = Scalar(0);     // constant phase-profile offset (m)
    std::optional<Scalar> zeta_override; // passivity factor; derived when unset
    std::uint32_t q_x = 0, q_y = 0;      // element counts, metadata

    void validate() const {
        if (!(length_x > Scalar(0)) || !(length_y > Scalar(0)))
            throw std::invalid_argument("irs panel lengths must be > 0");
    }

    // The continuous-surface model assumes L >> lambda.
    bool much_larger_than_wavelength(Scalar lambda) const {
        return length_x >= Scalar(100) * lambda && length_y >= Scalar(100) * lambda;
    }
};

using IrsParamsd = IrsParams<double>;

// Linear phase-shift profile phi_irs(r) = k (Phi0 + Phi_x x + Phi_y y),
// chosen so the combined incident+reflected phase has no linear term and the
// beam is steered into the lens direction (anomalous reflection).
template <typename Scalar>
struct PhaseProfile {
    Scalar slope_x; // Phi_x
    Scalar slope_y; // Phi_y
    Scalar offset;  // Phi0 (m)

    // Profile phase at an IRS point, in radians, for wavenumber k.
    Scalar phase(Scalar k, Scalar x, Scalar y) const {
        return k * (offset + slope_x * x + slope_y * y);
    }
};

using PhaseProfiled = PhaseProfile<double>;

template <typename Scalar>
PhaseProfile<Scalar> linear_phase_profile(const LinkGeometry<Scalar>& geom, Scalar phi0 = Scalar(0)) {
    using std::cos;
    using std::sin;
    PhaseProfile<Scalar> p;
    p.slope_x = cos(geom.theta_l) * cos(geom.phi_l) + cos(geom.theta_p) * cos(geom.phi_p);
    p.slope_y = cos(geom.theta_l) * sin(geom.phi_l) + cos(geom.theta_p) * sin(geom.phi_p);
    p.offset = phi0;
    return p;
}

} // namespace irsfso
