// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.
//
// The oracle here is an independent high-precision Maclaurin evaluation of
// erf on MPFR reals (precision scaled to absorb the e^{|z|^2} cancellation),
// entirely separate from the double-precision region-switching
// implementation it checks.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <mpfr.h>

#include "erf_oracle.hpp"
#include "irsfso/complex_erf.hpp"

using namespace irsfso;

namespace {

using irsfso_test::erf_oracle;

double rel_err(std::complex<double> got, std::complex<double> want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

} // namespace

TEST_CASE("erf is odd and real on the real axis") {
    CHECK(complex_erf({0.0, 0.0}) == std::complex<double>(0.0, 0.0));
    const std::complex<double> z{1.3, 0.7};
    const auto a = complex_erf(z);
    const auto b = complex_erf(-z);
    CHECK(std::abs(a + b) < 1e-14 * std::abs(a));
    CHECK(std::abs(complex_erf({2.0, 0.0}).imag()) < 1e-15);
    CHECK(complex_erf({2.0, 0.0}).real() == doctest::Approx(std::erf(2.0)).epsilon(1e-14));
}

TEST_CASE("reference values") {
    CHECK(rel_err(complex_erf({1.0, 0.0}), {0.8427007929497149, 0.0}) < 1e-12);
    CHECK(rel_err(complex_erf({1.0, 1.0}), {1.3161512816979476, 0.19045346923783471}) < 1e-10);
}

TEST_CASE("matches the high-precision oracle on a 100-point grid") {
    // Covers both algorithm regions and the argument range the frequency
    // response uses (A ~ 7.2, B up to ~15).
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double re = 0.05 + 8.0 * i / 9.0;
            const double im = 15.0 * j / 9.0;
            const std::complex<double> z{re, im};
            const double e = rel_err(complex_erf(z), erf_oracle(z));
            worst = std::max(worst, e);
            CHECK(e < 1e-10);
        }
    }
    MESSAGE("worst relative error on grid: ", worst);
}

TEST_CASE("quadrant symmetries against the oracle") {
    const std::complex<double> z{2.3, 5.1};
    const auto w = erf_oracle(z);
    CHECK(rel_err(complex_erf(std::conj(z)), std::conj(w)) < 1e-10);
    CHECK(rel_err(complex_erf(-z), -w) < 1e-10);
    CHECK(rel_err(complex_erf({-z.real(), z.imag()}), -std::conj(w)) < 1e-10);
}

TEST_CASE("large arguments near the overflow edge") {
    // |Im z| ~ 18: |erf| ~ e^{296}; the scaled assembly must not overflow.
    const std::complex<double> z{2.0, 18.0};
    const auto got = complex_erf(z);
    CHECK(std::isfinite(got.real()));
    CHECK(std::isfinite(got.imag()));
    CHECK(rel_err(got, erf_oracle(z)) < 1e-10);

    const std::complex<double> z2{0.0, 12.0}; // pure imaginary: i erfi(12)
    const auto got2 = complex_erf(z2);
    CHECK(std::abs(got2.real()) < 1e-10 * std::abs(got2.imag()));
    CHECK(rel_err(got2, erf_oracle(z2)) < 1e-10);
}
