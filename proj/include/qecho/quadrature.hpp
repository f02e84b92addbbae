#ifndef QECHO_QUADRATURE_HPP
#define QECHO_QUADRATURE_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "qecho/errors.hpp"

namespace qecho {

// The per-mode integrands only depend on the phase through sin^2, so the
// full-period average (1/2pi) \int_0^{2pi} F(sin^2 t) dt collapses to
// (2/pi) \int_0^{pi/2} F(sin^2 t) dt. The integrand extends to a smooth
// periodic function, so the trapezoidal rule converges spectrally; node
// counts are doubled until two successive levels agree.
template <class F>
double phase_average(F&& f, double tol = 1e-10, int n0 = 16, int n_max = 1 << 16) {
    const double h0 = std::numbers::pi / 2.0;
    int n = n0;
    // endpoint-halved trapezoid on [0, pi/2], expressed as an average
    double sum = 0.5 * (f(0.0) + f(1.0));
    for (int j = 1; j < n; ++j) {
        const double s = std::sin(j * h0 / n);
        sum += f(s * s);
    }
    double prev = sum / n;
    while (n < n_max) {
        // refine: insert midpoints
        double mid = 0.0;
        for (int j = 0; j < n; ++j) {
            const double s = std::sin((j + 0.5) * h0 / n);
            mid += f(s * s);
        }
        sum += mid;
        n *= 2;
        const double cur = sum / n;
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur)))
            return cur;
        prev = cur;
    }
    throw numeric_accuracy_error("phase_average: trapezoid refinement did not "
                                 "reach the requested tolerance");
}

// Midpoint nodes s_j = sin^2((j+1/2) pi / (2N)); averaging F over them is the
// shifted-trapezoid version of the rule above (same spectral accuracy) and is
// convenient for tabulating integrands reused across many evaluations.
inline std::vector<double> phase_nodes(int n) {
    std::vector<double> s(static_cast<std::size_t>(n));
    const double h = std::numbers::pi / (2.0 * n);
    for (int j = 0; j < n; ++j) {
        const double v = std::sin((j + 0.5) * h);
        s[static_cast<std::size_t>(j)] = v * v;
    }
    return s;
}

inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        acc += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return acc;
}

} // namespace qecho

#endif
