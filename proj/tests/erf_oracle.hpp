// SPDX-License-Identifier: Apache-2.0
//
// Test-only high-precision erf oracle: Maclaurin series on MPFR reals with
// precision scaled to absorb the e^{|z|^2} cancellation. Independent of the
// double-precision implementation under test.

#pragma once

#include <complex>
#include <mpfr.h>

namespace irsfso_test {

struct MpComplex {
    mpfr_t re, im;
    explicit MpComplex(mpfr_prec_t prec) {
        mpfr_init2(re, prec);
        mpfr_init2(im, prec);
        mpfr_set_d(re, 0.0, MPFR_RNDN);
        mpfr_set_d(im, 0.0, MPFR_RNDN);
    }
    ~MpComplex() {
        mpfr_clear(re);
        mpfr_clear(im);
    }
    MpComplex(const MpComplex&) = delete;
    MpComplex& operator=(const MpComplex&) = delete;
};

inline void mp_set(MpComplex& out, double re, double im) {
    mpfr_set_d(out.re, re, MPFR_RNDN);
    mpfr_set_d(out.im, im, MPFR_RNDN);
}

inline void mp_mul(MpComplex& out, const MpComplex& a, const MpComplex& b, mpfr_prec_t prec) {
    mpfr_t t1, t2, re, im;
    mpfr_inits2(prec, t1, t2, re, im, (mpfr_ptr) nullptr);
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_sub(re, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re, b.im, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.re, MPFR_RNDN);
    mpfr_add(im, t1, t2, MPFR_RNDN);
    mpfr_set(out.re, re, MPFR_RNDN);
    mpfr_set(out.im, im, MPFR_RNDN);
    mpfr_clears(t1, t2, re, im, (mpfr_ptr) nullptr);
}

inline void mp_add(MpComplex& out, const MpComplex& a) {
    mpfr_add(out.re, out.re, a.re, MPFR_RNDN);
    mpfr_add(out.im, out.im, a.im, MPFR_RNDN);
}

inline void mp_div_ui(MpComplex& out, unsigned long d) {
    mpfr_div_ui(out.re, out.re, d, MPFR_RNDN);
    mpfr_div_ui(out.im, out.im, d, MPFR_RNDN);
}

inline std::complex<double> erf_oracle(std::complex<double> z) {
    const double zn = std::abs(z);
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(256 + 2.0 * zn * zn);
    const int terms = static_cast<int>(4.0 * zn * zn) + 80;

    MpComplex mz2(prec), term(prec), sum(prec), contrib(prec);
    {
        MpComplex zz(prec);
        mp_set(zz, z.real(), z.imag());
        mp_mul(mz2, zz, zz, prec);
        mpfr_neg(mz2.re, mz2.re, MPFR_RNDN);
        mpfr_neg(mz2.im, mz2.im, MPFR_RNDN);
    }
    mp_set(term, z.real(), z.imag());
    mp_set(sum, 0.0, 0.0);

    for (int n = 0; n < terms; ++n) {
        mpfr_set(contrib.re, term.re, MPFR_RNDN);
        mpfr_set(contrib.im, term.im, MPFR_RNDN);
        mp_div_ui(contrib, static_cast<unsigned long>(2 * n + 1));
        mp_add(sum, contrib);
        mp_mul(term, term, mz2, prec);
        mp_div_ui(term, static_cast<unsigned long>(n + 1));
    }

    mpfr_t spi;
    mpfr_init2(spi, prec);
    mpfr_const_pi(spi, MPFR_RNDN);
    mpfr_sqrt(spi, spi, MPFR_RNDN);
    mpfr_ui_div(spi, 2, spi, MPFR_RNDN);
    mpfr_mul(sum.re, sum.re, spi, MPFR_RNDN);
    mpfr_mul(sum.im, sum.im, spi, MPFR_RNDN);
    mpfr_clear(spi);

    return {mpfr_get_d(sum.re, MPFR_RNDN), mpfr_get_d(sum.im, MPFR_RNDN)};
}

} // namespace irsfso_test
