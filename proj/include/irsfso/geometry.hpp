// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "irsfso/constants.hpp"

namespace irsfso {

// Tx / IRS / Rx placement. The IRS occupies the global xy-plane with its
// center at the origin; the beam axis meets the origin from distance d_l in
// direction (theta_l, phi_l), the lens center sits at distance d_p with its
// normal pointing in (theta_p, phi_p). Elevations are measured from the IRS
// plane, azimuths from the x-axis.
template <typename Scalar>
struct LinkGeometry {
    Scalar d_l = Scalar(200);         // Tx -> IRS distance (m)
    Scalar theta_l = Scalar(kPi / 2); // beam elevation (rad)
    Scalar phi_l = Scalar(0);         // beam azimuth (rad)
    Scalar d_p = Scalar(220);         // IRS -> lens distance (m)
    Scalar theta_p = Scalar(0.1);     // lens-normal elevation (rad)
    Scalar phi_p = Scalar(kPi);       // lens-normal azimuth (rad)
    Scalar lens_radius = Scalar(0.1); // circular lens radius a (m)
    Scalar v_l = Scalar(kSpeedOfLightAir);

    void validate() const {
        if (!(d_l > Scalar(0)))
            throw std::invalid_argument("geometry.d_l must be > 0");
        if (!(d_p > Scalar(0)))
            throw std::invalid_argument("geometry.d_p must be > 0");
        if (!(lens_radius > Scalar(0)))
            throw std::invalid_argument("geometry.lens_radius must be > 0");
        if (!(v_l > Scalar(0)))
            throw std::invalid_argument("geometry.v_l must be > 0");
        if (!(theta_l > Scalar(0) && theta_l <= Scalar(kPi / 2)))
            throw std::invalid_argument("geometry.theta_l must lie in (0, pi/2]");
        if (!(theta_p >= Scalar(0) && theta_p <= Scalar(kPi / 2)))
            throw std::invalid_argument("geometry.theta_p must lie in [0, pi/2]");
    }

    bool in_plane(Scalar tol = Scalar(1e-12)) const {
        using std::abs;
        return abs(phi_l) <= tol && abs(phi_p - Scalar(kPi)) <= tol;
    }
};

using LinkGeometryd = LinkGeometry<double>;

// Rotation taking lens-plane coordinates [x_p, y_p, d_p] to global xyz
// coordinates. Columns are the images of the lens x_p/y_p/z_p axes; the
// lens z_p axis is the lens normal (theta_p, phi_p).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> rotation_matrix(Scalar theta_p, Scalar phi_p) {
    using std::cos;
    using std::sin;
    const Scalar ct = cos(theta_p), st = sin(theta_p);
    const Scalar cp = cos(phi_p), sp = sin(phi_p);
    Eigen::Matrix<Scalar, 3, 3> r;
    r << cp * st, -sp, cp * ct,
         sp * st,  cp, sp * ct,
         -ct,      Scalar(0), st;
    return r;
}

// r_o = R_rot [x_p, y_p, d_p]^T : global coordinates of a lens-plane point.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> lens_to_global(const Eigen::Matrix<Scalar, 2, 1>& r_p,
                                           const LinkGeometry<Scalar>& geom) {
    Eigen::Matrix<Scalar, 3, 1> aug(r_p.x(), r_p.y(), geom.d_p);
    return rotation_matrix(geom.theta_p, geom.phi_p) * aug;
}

// Half side a~ = sqrt(pi) a / 2 of the square with the same area as the
// circular lens of radius a; the CIR integrals run over [-a~, a~]^2.
template <typename Scalar>
Scalar equivalent_square_half_side(Scalar lens_radius) {
    using std::sqrt;
    return sqrt(Scalar(kPi)) * lens_radius / Scalar(2);
}

} // namespace irsfso
