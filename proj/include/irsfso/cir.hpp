// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsfso/beam.hpp"
#include "irsfso/delay.hpp"
#include "irsfso/geometry.hpp"
#include "irsfso/irs.hpp"

namespace irsfso {

enum class CirMethod { OracleLemma1, Theorem1, Corollary1 };

inline const char* to_string(CirMethod m) {
    switch (m) {
    case CirMethod::OracleLemma1: return "oracle";
    case CirMethod::Theorem1: return "theorem1";
    case CirMethod::Corollary1: return "corollary1";
    }
    return "?";
}

// Requested when a formula needs the Proposition-1 passivity normalization
// but the geometry is non-dispersive (a1 = 0), where that normalization is
// undefined and the delta-channel path applies instead.
struct NondispersiveNormalization : std::domain_error {
    NondispersiveNormalization()
        : std::domain_error("passivity factor undefined for a1 = 0; use the delta-channel path") {}
};

struct EmptyCir : std::domain_error {
    EmptyCir() : std::domain_error("CIR has no positive samples") {}
};

// Sampled GML impulse response. Samples are stored relative to the bulk
// delay tau0; the grid always holds an odd number of points so one sample
// sits exactly at tau0. A non-dispersive geometry is tagged as a delta
// channel and carries no samples.
struct Cir {
    std::vector<double> t_rel; // sample times minus tau0 (s)
    std::vector<double> h;     // gain density (1/s), >= 0
    double tau0 = 0;
    CirMethod method = CirMethod::Corollary1;
    bool delta_channel = false;
    double delta_gain = 0; // dimensionless gain when delta_channel

    double dt() const { return t_rel.size() > 1 ? t_rel[1] - t_rel[0] : 0.0; }
    double peak() const;
    double integral() const; // trapezoid over the grid, or delta_gain
};

// Closed-form in-plane CIR: a Gaussian of decay c_tau truncated to
// |t - tau0| <= L_x |a1| / 2, scaled by the lens capture fraction h_LOS.
struct Corollary1Params {
    double c_tau = 0;        // Gaussian coefficient 2 / (a1 w_x)^2 (s^-2)
    double h_los = 0;        // lens capture fraction, in (0, 1]
    double support_half = 0; // L_x |a1| / 2 (s)
    double tau0 = 0;
    double zeta = 0;         // passivity factor in effect
    double a1 = 0;           // delay slope (s/m)
    double gain_scale = 1;   // (zeta / zeta_prop1)^2 when overridden

    bool dispersive() const { return a1 != 0.0; }
    double peak() const;
    double value(double t_rel) const; // h_gml(tau0 + t_rel)
    double integral_support() const;  // exact integral over the support
};

// Constants of the general (out-of-plane) CIR formula, derived from the
// stationary-line reduction of the delayed Huygens-Fresnel integral with
// the quadratic lens-phase terms frozen at the lens center.
struct Theorem1Params {
    std::complex<double> c1, c2, c5;  // frozen quadratic coefficients (1/m^2)
    std::complex<double> a_s;         // c1 + rho^2 c2 - rho c5
    std::complex<double> sigma_line;  // (4 c1 c2 - c5^2) / (2 a_s); decay per Y0^2
    std::complex<double> m00, m01, m10, m11; // [c3,c4] = M r_p
    double rho = 0;     // a1 / a2
    double a1 = 0, a2 = 0;
    double amp = 0;     // C_h / (2 a_tilde) prefactor (1/(m^2 s))
    double a_tilde = 0; // lens half-side (m)
    double support_half = 0;
    double tau0 = 0;
    double zeta = 0;
};

// Lens-grid resolution and tolerances of the Lemma-1 reference evaluation.
// The collected intensity varies weakly across the lens (nearly flat along
// x, a mild Gaussian along y), so modest Gauss orders converge; doubling
// them is the standard self-convergence check.
struct OracleOptions {
    int lens_nx = 4;        // Gauss points across the lens x axis
    int lens_ny = 16;       // Gauss points across the lens y axis
    double line_rel_tol = 1e-6;
    bool circular_mask = false; // integrate the true circular lens instead
                                // of the equal-area square
};

double passivity_zeta(const LinkGeometryd& geom, const BeamParamsd& beam);

Corollary1Params corollary1_params(const LinkGeometryd& geom, const BeamParamsd& beam,
                                   const IrsParamsd& irs);
std::complex<double> freq_response_corollary1(const Corollary1Params& p, double f);

Theorem1Params theorem1_params(const LinkGeometryd& geom, const BeamParamsd& beam,
                               const IrsParamsd& irs);
double cir_theorem1_value(const Theorem1Params& p, double t_rel, double rel_tol = 1e-6);

double cir_oracle_value(const LinkGeometryd& geom, const BeamParamsd& beam, const IrsParamsd& irs,
                        double t_rel, const OracleOptions& opt = {});

// Sampled-grid front ends. 2049 points over 1.05x the support; the odd
// count puts one sample exactly at tau0.
Cir cir_corollary1(const LinkGeometryd& geom, const BeamParamsd& beam, const IrsParamsd& irs,
                   std::size_t n_samples = 2049, double pad = 1.05);
Cir cir_theorem1(const LinkGeometryd& geom, const BeamParamsd& beam, const IrsParamsd& irs,
                 std::size_t n_samples = 2049, double pad = 1.05, double rel_tol = 1e-6);
Cir cir_oracle_lemma1(const LinkGeometryd& geom, const BeamParamsd& beam, const IrsParamsd& irs,
                      std::size_t n_samples = 257, double pad = 1.05, const OracleOptions& opt = {});

// Width of the CIR between the first and last crossings of half the peak
// value, by linear interpolation between grid samples.
double effective_delay_spread_3db(const Cir& cir);

} // namespace irsfso
