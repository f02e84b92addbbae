#ifndef QECHO_DISTRIBUTION_HPP
#define QECHO_DISTRIBUTION_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qecho/errors.hpp"
#include "qecho/parallel.hpp"
#include "qecho/quadrature.hpp"

namespace qecho {

enum class Provenance { exact_inversion, empirical, convolution };

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    int points = 801;

    bool automatic() const { return lo == 0.0 && hi == 0.0; }

    void validate() const {
        if (!automatic() && !(lo < hi))
            throw invalid_spec_error("GridSpec: lo must be < hi");
        if (points < 8)
            throw invalid_spec_error("GridSpec: need at least 8 grid points");
    }
};

// Density on a grid plus summary statistics. Degenerate (point-mass)
// distributions are flagged instead of being forced onto the grid.
struct DistributionEstimate {
    std::vector<double> grid;
    std::vector<double> density;
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    Provenance provenance = Provenance::exact_inversion;
    bool degenerate = false;
    double delta_location = 0.0;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

inline Moments moments_from_density(const std::vector<double>& grid,
                                    const std::vector<double>& density) {
    std::vector<double> tmp(grid.size());
    auto integ = [&](auto&& f) {
        for (std::size_t i = 0; i < grid.size(); ++i) tmp[i] = f(grid[i]) * density[i];
        return trapezoid(grid, tmp);
    };
    Moments mo;
    const double mass = integ([](double) { return 1.0; });
    mo.mean = integ([](double z) { return z; }) / mass;
    const double mu = mo.mean;
    mo.variance = integ([mu](double z) { return (z - mu) * (z - mu); }) / mass;
    const double m3 = integ([mu](double z) { return std::pow(z - mu, 3); }) / mass;
    const double m4 = integ([mu](double z) { return std::pow(z - mu, 4); }) / mass;
    if (mo.variance > 0.0) {
        mo.skewness = m3 / std::pow(mo.variance, 1.5);
        mo.excess_kurtosis = m4 / (mo.variance * mo.variance) - 3.0;
    }
    return mo;
}

inline std::vector<double> linear_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1.0);
    return g;
}

namespace detail {

// Reconstructs a density from characteristic-function samples phi(u_m),
// u_m = 2 pi m / period, as a tapered Fourier series
//   p(z) = (1/P) [1 + 2 sum_m w_m Re(phi_m e^{-i u_m z})].
// The support must fit inside one period, which makes the series expansion
// exact; the only error source is coefficient truncation. When the
// coefficients were cut by magnitude decay the weights are all one; when the
// hard cap was hit the caller passes taper_from < M and the linear taper
// (de la Vallee Poussin style) suppresses the Gibbs tail.
inline std::vector<double> invert_cf_series(const std::vector<std::complex<double>>& phi,
                                            double period,
                                            std::size_t taper_from,
                                            const std::vector<double>& grid) {
    const std::size_t m_count = phi.size(); // coefficients 1..m_count
    const double du = 2.0 * std::numbers::pi / period;
    std::vector<double> weights(m_count, 1.0);
    if (taper_from < m_count) {
        const double span = static_cast<double>(m_count - taper_from);
        for (std::size_t m = taper_from; m < m_count; ++m)
            weights[m] = static_cast<double>(m_count - m) / (span + 1.0);
    }
    std::vector<double> density(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double z = grid[i];
        const std::complex<double> rot = std::polar(1.0, -du * z);
        std::complex<double> e = rot;
        double acc = 0.5; // the m = 0 coefficient (phi = 1) with weight 1/2
        for (std::size_t m = 0; m < m_count; ++m) {
            acc += weights[m] * (phi[m] * e).real();
            e *= rot;
        }
        density[i] = 2.0 * acc / period;
    });
    return density;
}

// Analytic integral of the tapered series over [lo, hi]. Used for leak
// detection: the trapezoid rule under-counts the mass of densities with
// integrable inverse-square-root edges by O(sqrt(grid step)), while the
// term-by-term integral of the series is exact.
inline double series_mass_in_range(const std::vector<std::complex<double>>& phi,
                                   double period, std::size_t taper_from,
                                   double lo, double hi) {
    const std::size_t m_count = phi.size();
    const double du = 2.0 * std::numbers::pi / period;
    const double span = static_cast<double>(m_count - taper_from);
    double mass = (hi - lo) / period;
    for (std::size_t m = 0; m < m_count; ++m) {
        const double w = (m >= taper_from)
                             ? static_cast<double>(m_count - m) / (span + 1.0)
                             : 1.0;
        const double u = du * static_cast<double>(m + 1);
        const std::complex<double> seg =
            (std::polar(1.0, -u * hi) - std::polar(1.0, -u * lo)) /
            std::complex<double>(0.0, -u);
        mass += 2.0 * w * (phi[m] * seg).real() / period;
    }
    return mass;
}

} // namespace detail

// Normalizes in place (after clipping Gibbs undershoot) and returns the raw
// trapezoid mass found on the grid, which callers use for leak detection.
inline double normalize_density(const std::vector<double>& grid,
                                std::vector<double>& density) {
    const double raw = trapezoid(grid, density);
    for (double& d : density)
        if (d < 0.0) d = 0.0;
    const double clipped = trapezoid(grid, density);
    if (clipped > 0.0)
        for (double& d : density) d /= clipped;
    return raw;
}

} // namespace qecho

#endif
