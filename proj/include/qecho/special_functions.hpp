#ifndef QECHO_SPECIAL_FUNCTIONS_HPP
#define QECHO_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <limits>
#include <numbers>

#include "qecho/errors.hpp"

namespace qecho {

// Complete elliptic integral of the second kind in the parameter
// convention, E(m) = \int_0^{pi/2} sqrt(1 - m sin^2 t) dt, 0 <= m <= 1.
// Arithmetic-geometric mean iteration: with c_0 = sqrt(m),
// E = K * (1 - sum 2^{n-1} c_n^2) and K = pi / (2 agm(1, sqrt(1-m))).
inline double elliptic_e(double m) {
    if (m < 0.0 || m > 1.0 || std::isnan(m))
        throw invalid_spec_error("elliptic_e: parameter must lie in [0,1]");
    if (m == 0.0) return std::numbers::pi / 2.0;
    const double m1 = 1.0 - m;
    if (m1 < 1e-9) {
        // K(m) diverges while E stays finite; the AGM product loses digits
        // here, so switch to the m -> 1 expansion.
        if (m1 == 0.0) return 1.0;
        const double l = std::log(4.0 / std::sqrt(m1));
        return 1.0 + 0.5 * m1 * (l - 0.5);
    }
    double a = 1.0;
    double g = std::sqrt(m1);
    double c2_sum = 0.5 * m; // 2^{-1} c_0^2
    double pow2 = 1.0;
    for (int i = 0; i < 64; ++i) {
        const double c = 0.5 * (a - g);
        const double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
        c2_sum += pow2 * c * c;
        pow2 *= 2.0;
        if (c < 4e-16 * a) {
            const double k_complete = std::numbers::pi / (2.0 * a);
            return k_complete * (1.0 - c2_sum);
        }
    }
    throw numeric_accuracy_error("elliptic_e: AGM did not converge");
}

namespace detail {

inline double bessel_j0_series(double x) {
    // Power series sum_k (-1)^k (x^2/4)^k / (k!)^2; adequate for |x| < 12
    // where cancellation costs at most ~4 digits.
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

inline double bessel_j0_asymptotic(double x) {
    // Hankel expansion: J0(x) = sqrt(2/(pi x)) [P cos(x-pi/4) - Q sin(x-pi/4)]
    // with P = sum (-1)^j a_{2j} x^{-2j}, Q = sum (-1)^{j+1} a_{2j+1} x^{-2j-1},
    // a_k = prod_{j<=k} (2j-1)^2 / (k! 8^k). Terms are added until they stop
    // shrinking, which at x >= 12 leaves ~1e-13 truncation error.
    double p = 1.0;
    double q = 0.0;
    double a = 1.0;   // a_k / x^k, running
    double prev = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double d = 2.0 * k - 1.0;
        a *= d * d / (8.0 * k * x);
        if (std::abs(a) >= prev) break; // asymptotic tail started growing
        prev = std::abs(a);
        const int r = k % 4;
        if (r == 1) q -= a;
        else if (r == 2) p -= a;
        else if (r == 3) q += a;
        else p += a;
        if (std::abs(a) < 1e-17) break;
    }
    const double chi = x - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) *
           (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace detail

// Bessel function of the first kind, order zero.
inline double bessel_j0(double x) {
    const double ax = std::abs(x);
    if (ax < 12.0) return detail::bessel_j0_series(ax);
    return detail::bessel_j0_asymptotic(ax);
}

} // namespace qecho

#endif
