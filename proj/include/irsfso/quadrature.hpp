// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "irsfso/constants.hpp"

namespace irsfso {

// Gauss-Legendre nodes and weights on [a, b], found by Newton iteration on
// the Legendre polynomial.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule gauss_legendre(std::size_t n, double a, double b) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15)
                break;
        }
        rule.nodes[i] = xm - xl * z;
        rule.nodes[n - 1 - i] = xm + xl * z;
        rule.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

namespace detail {

template <typename F, typename V>
V simpson_rec(const F& f, double a, double b, V fa, V fb, V fm, V whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const V flm = f(0.5 * (a + m));
    const V frm = f(0.5 * (m + b));
    const double h = b - a;
    const V left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const V right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const V sum = left + right;
    if (depth <= 0 || std::abs(sum - whole) <= 15.0 * tol)
        return sum + (sum - whole) / 15.0;
    return simpson_rec(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson quadrature with an absolute tolerance. `initial_panels`
// seeds the subdivision so oscillatory integrands are not aliased by the
// first coarse estimates.
template <typename F, typename V = std::invoke_result_t<F, double>>
V adaptive_simpson(const F& f, double a, double b, double abs_tol, int initial_panels = 1,
                   int max_depth = 28) {
    if (!(b > a))
        return V{};
    if (initial_panels < 1)
        initial_panels = 1;
    V total{};
    const double h = (b - a) / initial_panels;
    const double panel_tol = abs_tol / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double pa = a + i * h;
        const double pb = (i + 1 == initial_panels) ? b : pa + h;
        const V fa = f(pa), fb = f(pb), fm = f(0.5 * (pa + pb));
        const V whole = ((pb - pa) / 6.0) * (fa + 4.0 * fm + fb);
        total += detail::simpson_rec(f, pa, pb, fa, fb, fm, whole, panel_tol, max_depth);
    }
    return total;
}

} // namespace irsfso
