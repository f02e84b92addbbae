#ifndef QECHO_XY_MODEL_HPP
#define QECHO_XY_MODEL_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qecho/errors.hpp"

namespace qecho {

// Sudden-quench problem definition for the transverse-field XY chain.
// Energies are measured in units of the exchange coupling; beta may be
// +infinity (zero temperature).
struct QuenchSpec {
    double h0 = 0.0;
    double gamma0 = 0.0;
    double h1 = 0.0;
    double gamma1 = 0.0;
    double beta = 1.0;
    int L = 2;

    bool zero_temperature() const { return std::isinf(beta); }

    void validate() const {
        if (L < 2 || L % 2 != 0)
            throw invalid_spec_error("QuenchSpec: L must be even and >= 2, got " +
                                     std::to_string(L));
        if (std::isnan(beta) || beta < 0.0)
            throw invalid_spec_error("QuenchSpec: beta must be >= 0 (or +inf)");
        for (double v : {h0, gamma0, h1, gamma1})
            if (!std::isfinite(v))
                throw invalid_spec_error("QuenchSpec: couplings must be finite");
    }
};

// Static per-momentum data of the pre- and post-quench Hamiltonians.
// inv_c = sech(beta * lambda0) = 1/c is the numerically primary form: every
// downstream formula stays finite in it at beta = infinity, where c itself
// overflows. The amplitude `a` is stored in the expansion-matched convention
// a = (1 - 1/c) sin^2(dtheta) / 2, i.e. the exact first-harmonic coefficient
// of ln f at leading order; see small_quench.hpp for the convention switch.
struct ModeData {
    double k = 0.0;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    double dtheta = 0.0;
    double c = 1.0;
    double inv_c = 1.0;
    double alpha = 0.0; // sin^2(dtheta)
    double b = 0.0;     // (1 - c^-2) sin^2(dtheta)
    double a = 0.0;
};

// Fermionic boundary conditions quantize k = (2n+1) pi / L; the L/2 positive
// values are returned (the -k partners carry identical mode data).
inline std::vector<double> mode_grid(int L) {
    if (L < 2 || L % 2 != 0)
        throw invalid_spec_error("mode_grid: L must be even and >= 2, got " +
                                 std::to_string(L));
    std::vector<double> ks(static_cast<std::size_t>(L / 2));
    for (int n = 0; n < L / 2; ++n)
        ks[static_cast<std::size_t>(n)] = (2.0 * n + 1.0) * std::numbers::pi / L;
    return ks;
}

// Single-particle energy Lambda_k = sqrt((cos k + h)^2 + gamma^2 sin^2 k).
inline double dispersion(double k, double h, double gamma) {
    return std::hypot(std::cos(k) + h, gamma * std::sin(k));
}

// Two-argument arctangent branch of theta_k; continuous in k on (0, pi) away
// from gap zeros, where the angle is undefined and we fail loudly.
inline double bogoliubov_angle(double k, double h, double gamma) {
    const double y = gamma * std::sin(k);
    const double x = h + std::cos(k);
    if (x == 0.0 && y == 0.0)
        throw degenerate_mode_error(
            k, "bogoliubov_angle: gap closes exactly at k = " + std::to_string(k));
    return std::atan2(y, x);
}

namespace detail {

// sech computed through exp(-x); immune to cosh overflow.
inline double stable_sech(double x) {
    if (std::isinf(x)) return 0.0;
    const double e = std::exp(-x);
    return 2.0 * e / (1.0 + e * e);
}

} // namespace detail

inline ModeData make_mode(double k, const QuenchSpec& spec) {
    ModeData m;
    m.k = k;
    m.lambda0 = dispersion(k, spec.h0, spec.gamma0);
    m.lambda1 = dispersion(k, spec.h1, spec.gamma1);
    if (m.lambda0 == 0.0 || m.lambda1 == 0.0)
        throw degenerate_mode_error(
            k, "mode_data: quantized momentum hits an exact gap zero at k = " +
                   std::to_string(k));
    m.theta0 = bogoliubov_angle(k, spec.h0, spec.gamma0);
    m.theta1 = bogoliubov_angle(k, spec.h1, spec.gamma1);
    m.dtheta = m.theta1 - m.theta0;
    m.inv_c = spec.zero_temperature() ? 0.0 : detail::stable_sech(spec.beta * m.lambda0);
    m.c = m.inv_c > 0.0 ? 1.0 / m.inv_c : std::numeric_limits<double>::infinity();
    const double s = std::sin(m.dtheta);
    m.alpha = s * s;
    m.b = (1.0 - m.inv_c * m.inv_c) * m.alpha;
    m.a = 0.5 * (1.0 - m.inv_c) * m.alpha;
    return m;
}

inline std::vector<ModeData> mode_data(const QuenchSpec& spec) {
    spec.validate();
    std::vector<ModeData> modes;
    modes.reserve(static_cast<std::size_t>(spec.L / 2));
    for (double k : mode_grid(spec.L)) modes.push_back(make_mode(k, spec));
    return modes;
}

} // namespace qecho

#endif
