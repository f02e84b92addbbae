#ifndef QECHO_TORUS_STATS_HPP
#define QECHO_TORUS_STATS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qecho/distribution.hpp"
#include "qecho/echo.hpp"
#include "qecho/errors.hpp"
#include "qecho/parallel.hpp"
#include "qecho/quadrature.hpp"
#include "qecho/special_functions.hpp"
#include "qecho/xy_model.hpp"

namespace qecho {

// ---------------------------------------------------------------------------
// Infinite-time statistics of Z = ln L. Rational independence of the L/2
// frequencies lets every time average be replaced by an independent uniform
// phase average per mode (theorem of averages); everything in this header is
// built on that reduction. empirical_distribution_Z is the brute-force
// time-sampling oracle used to cross-check it.
// ---------------------------------------------------------------------------

// g_k(lambda): phase average of f_k^lambda.
inline double mode_phase_average_g(const ModeData& m, double lambda,
                                   double tol = 1e-12) {
    if (m.alpha == 0.0 || m.inv_c == 1.0) return 1.0;
    if (lambda == 0.0) return 1.0;
    return phase_average(
        [&](double s) { return std::exp(lambda * log_per_mode_factor_s(m, s)); }, tol);
}

// ln M^Z(lambda) = sum_k ln g_k(lambda).
inline double log_mgf(const std::vector<ModeData>& modes, double lambda) {
    double acc = 0.0;
    for (const auto& m : modes) acc += std::log(mode_phase_average_g(m, lambda));
    return acc;
}

// Closed form of the exact mean echo: mean(L) = prod_k f1_k with
//   f1_k = 1 - (1 - 1/c) alpha/2 + 2c/(1+c)^2 [ (2/pi) E(b) + b/4 - 1 ],
// E the complete elliptic integral of the second kind (parameter convention).
// In terms of ic = 1/c the prefactor 2c/(1+c)^2 becomes 2 ic/(1+ic)^2, which
// stays finite down to zero temperature.
inline double mode_mean_factor_closed_form(const ModeData& m) {
    const double ic = m.inv_c;
    const double pref = 2.0 * ic / ((1.0 + ic) * (1.0 + ic));
    const double bracket = (2.0 / std::numbers::pi) * elliptic_e(m.b) + m.b / 4.0 - 1.0;
    return 1.0 - 0.5 * (1.0 - ic) * m.alpha + pref * bracket;
}

inline double mean_echo_closed_form(const std::vector<ModeData>& modes) {
    double log_acc = 0.0;
    for (const auto& m : modes) log_acc += std::log(mode_mean_factor_closed_form(m));
    return std::exp(log_acc);
}

// Per-mode moments of ln f over the torus angle: m1 and central mu2..mu4.
struct ModeLogMoments {
    double m1 = 0.0;
    double mu2 = 0.0;
    double mu3 = 0.0;
    double mu4 = 0.0;
};

inline ModeLogMoments mode_log_moments(const ModeData& m, double tol = 1e-11) {
    ModeLogMoments mo;
    if (m.alpha == 0.0 || m.inv_c == 1.0) return mo;
    mo.m1 = phase_average([&](double s) { return log_per_mode_factor_s(m, s); }, tol);
    auto central = [&](int n) {
        return phase_average(
            [&](double s) {
                return std::pow(log_per_mode_factor_s(m, s) - mo.m1, n);
            },
            tol);
    };
    mo.mu2 = central(2);
    mo.mu3 = central(3);
    mo.mu4 = central(4);
    return mo;
}

// kappa_1..kappa_n of Z (n in 2..4). Cumulants of independent summands add,
// so each entry is an exact sum of per-mode quadratures.
inline std::vector<double> cumulants_Z(const std::vector<ModeData>& modes,
                                       int n_max = 4) {
    if (n_max < 2 || n_max > 4)
        throw invalid_spec_error("cumulants_Z: n_max must be in 2..4");
    std::vector<double> kappa(static_cast<std::size_t>(n_max), 0.0);
    std::vector<ModeLogMoments> mos(modes.size());
    parallel_for(modes.size(), [&](std::size_t i) { mos[i] = mode_log_moments(modes[i]); });
    for (const auto& mo : mos) {
        kappa[0] += mo.m1;
        kappa[1] += mo.mu2;
        if (n_max >= 3) kappa[2] += mo.mu3;
        if (n_max >= 4) kappa[3] += mo.mu4 - 3.0 * mo.mu2 * mo.mu2;
    }
    return kappa;
}

struct InversionOptions {
    std::size_t max_terms = 32768;   // hard cap on Fourier coefficients
    double decay_cut = 1e-12;        // |phi| threshold for natural truncation
    int min_theta_nodes = 64;
    int max_theta_nodes = 8192;
};

// Exact distribution of Z by characteristic-function inversion. The support
// of Z is compact ([sum_k ln f_k(s=1), 0]), so a Fourier series on a period
// enclosing it represents the density exactly; coefficients are products of
// per-mode phase averages. With many modes the product decays below
// decay_cut quickly and truncation is clean; with one or two modes the decay
// is slow, the hard cap kicks in and the tapered partial sum is used (tests
// then compare binned masses rather than pointwise values).
inline DistributionEstimate exact_distribution_Z(const std::vector<ModeData>& modes,
                                                 GridSpec grid_spec = {},
                                                 InversionOptions opt = {}) {
    grid_spec.validate();
    const auto kappa = cumulants_Z(modes, 2);
    const double mean = kappa[0];
    const double var = kappa[1];

    DistributionEstimate out;
    out.provenance = Provenance::exact_inversion;
    if (var < 1e-24) {
        out.degenerate = true;
        out.delta_location = mean;
        out.mean = mean;
        return out;
    }
    const double sigma = std::sqrt(var);

    double support_lo = 0.0;
    double dw_max = 0.0;
    for (const auto& m : modes) {
        const double w1 = log_per_mode_factor_s(m, 1.0);
        support_lo += w1;
        dw_max = std::max(dw_max, -w1);
    }
    const double support_hi = 0.0;

    // The tapered partial sum smears edge singularities over a few times
    // period / m_eff, where m_eff is the usable coefficient count: the theta
    // quadrature with N nodes resolves oscillations only up to u ~ N / dw_max.
    // Pad the automatic grid by that smear width so the mass stays on-grid.
    const double width = support_hi - support_lo;
    const double du_est = 2.0 * std::numbers::pi / (1.05 * width + 1e-12);
    const double m_eff_est = std::min(
        static_cast<double>(opt.max_terms),
        std::max(64.0, static_cast<double>(opt.max_theta_nodes) /
                           (dw_max * du_est + 1e-300)));
    const double pad = 32.0 * width / m_eff_est + 1e-3 * sigma;
    const double want_lo = std::max(mean - 8.0 * sigma, support_lo - pad);
    const double want_hi = std::min(mean + 8.0 * sigma, support_hi + pad);
    double lo, hi;
    if (grid_spec.automatic()) {
        lo = want_lo;
        hi = want_hi;
    } else {
        lo = grid_spec.lo;
        hi = grid_spec.hi;
        if (lo > want_lo + 1e-12 || hi < want_hi - 1e-12)
            throw grid_too_narrow_error(
                "exact_distribution_Z: grid must cover mean +/- 8 sigma "
                "(intersected with the support)");
    }
    out.grid = linear_grid(lo, hi, grid_spec.points);

    const double span_lo = std::min(lo, support_lo);
    const double span_hi = std::max(hi, support_hi);
    const double period = (span_hi - span_lo) * 1.05 + 1e-12;
    const double du = 2.0 * std::numbers::pi / period;

    int n_nodes = opt.min_theta_nodes;
    std::vector<std::complex<double>> phi;
    std::size_t taper_from = 0;
    for (;;) {
        const auto s_nodes = phase_nodes(n_nodes);
        std::vector<std::vector<double>> w(modes.size());
        parallel_for(modes.size(), [&](std::size_t i) {
            w[i].resize(s_nodes.size());
            for (std::size_t j = 0; j < s_nodes.size(); ++j)
                w[i][j] = log_per_mode_factor_s(modes[i], s_nodes[j]);
        });

        phi.clear();
        // Incremental probe: walk up in m and stop as soon as the coefficient
        // product has decayed below the cut. Heavy-tailed products (one or two
        // modes) never decay, so the probe bails out and the capped path
        // computes all coefficients in parallel instead.
        const std::size_t probe_limit = std::min<std::size_t>(4096, opt.max_terms);
        bool slow_decay = false;
        {
            std::vector<std::complex<double>> cur, rot;
            cur.reserve(modes.size() * s_nodes.size());
            for (const auto& wk : w)
                for (double v : wk) {
                    rot.push_back(std::polar(1.0, du * v));
                    cur.push_back(rot.back());
                }
            for (std::size_t m = 1; m <= opt.max_terms; ++m) {
                std::complex<double> prod{1.0, 0.0};
                std::size_t idx = 0;
                for (std::size_t ki = 0; ki < modes.size(); ++ki) {
                    std::complex<double> acc{0.0, 0.0};
                    for (std::size_t j = 0; j < s_nodes.size(); ++j, ++idx) {
                        acc += cur[idx];
                        cur[idx] *= rot[idx];
                    }
                    prod *= acc / static_cast<double>(s_nodes.size());
                }
                phi.push_back(prod);
                if (std::abs(prod) < opt.decay_cut && m > 8) break;
                if (m == probe_limit && std::abs(prod) > 1e-6) {
                    slow_decay = true;
                    break;
                }
            }
            taper_from = (std::abs(phi.back()) < opt.decay_cut)
                             ? phi.size()
                             : phi.size() / 2;
        }
        if (slow_decay && n_nodes < opt.max_theta_nodes) {
            // A heavy-tailed coefficient sequence needs the full node budget
            // before the usable term count can be judged; recompute at max.
            n_nodes = opt.max_theta_nodes;
            continue;
        }
        if (slow_decay) {
            // Coefficients beyond u ~ n_nodes / dw_max are aliasing artifacts
            // of the theta quadrature, not signal; cap the series there.
            const std::size_t resolvable = static_cast<std::size_t>(std::max(
                64.0, std::floor(static_cast<double>(n_nodes) / (dw_max * du))));
            const std::size_t m_count = std::min(opt.max_terms, resolvable);
            const std::size_t n_chunks = std::max<std::size_t>(1, max_threads());
            std::vector<std::vector<std::complex<double>>> part(modes.size() * n_chunks);
            parallel_for(part.size(), [&](std::size_t ti) {
                const std::size_t ki = ti / n_chunks;
                const std::size_t ci = ti % n_chunks;
                const auto& wk = w[ki];
                const std::size_t nj = wk.size();
                const std::size_t jlo = ci * nj / n_chunks;
                const std::size_t jhi = (ci + 1) * nj / n_chunks;
                auto& buf = part[ti];
                buf.assign(m_count, {0.0, 0.0});
                for (std::size_t j = jlo; j < jhi; ++j) {
                    const std::complex<double> rot = std::polar(1.0, du * wk[j]);
                    std::complex<double> cur = rot;
                    for (std::size_t m = 0; m < m_count; ++m) {
                        buf[m] += cur;
                        cur *= rot;
                    }
                }
            });
            phi.assign(m_count, {1.0, 0.0});
            for (std::size_t ki = 0; ki < modes.size(); ++ki) {
                const double nj = static_cast<double>(w[ki].size());
                for (std::size_t m = 0; m < m_count; ++m) {
                    std::complex<double> acc{0.0, 0.0};
                    for (std::size_t ci = 0; ci < n_chunks; ++ci)
                        acc += part[ki * n_chunks + ci][m];
                    phi[m] *= acc / nj;
                }
            }
            taper_from = m_count / 2;
            break;
        }

        // Node adequacy: the theta quadrature must resolve oscillations up to
        // u_max * max|ln f| radians across the quarter period.
        const double u_max = du * static_cast<double>(phi.size());
        const int needed = static_cast<int>(std::min<double>(
            opt.max_theta_nodes, std::ceil(u_max * dw_max)));
        if (n_nodes >= needed || n_nodes >= opt.max_theta_nodes) break;
        while (n_nodes < needed) n_nodes *= 2;
        n_nodes = std::min(n_nodes, opt.max_theta_nodes);
    }

    out.density = detail::invert_cf_series(phi, period, taper_from, out.grid);
    const double in_grid_mass =
        detail::series_mass_in_range(phi, period, taper_from, lo, hi);
    normalize_density(out.grid, out.density);
    if (in_grid_mass < 1.0 - 1e-4)
        throw grid_too_narrow_error("exact_distribution_Z: density mass leaked "
                                    "outside the grid");
    const Moments mo = moments_from_density(out.grid, out.density);
    out.mean = mo.mean;
    out.variance = mo.variance;
    out.skewness = mo.skewness;
    out.excess_kurtosis = mo.excess_kurtosis;
    return out;
}

namespace detail {

inline double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

// Brute-force oracle: Z sampled at uniformly random times on [0, T].
// Random (rather than gridded) times avoid aliasing against
// near-commensurate frequencies.
inline DistributionEstimate empirical_distribution_Z(const std::vector<ModeData>& modes,
                                                     double horizon, std::size_t samples,
                                                     std::uint64_t seed,
                                                     GridSpec grid_spec = {}) {
    if (horizon <= 0.0 || samples == 0)
        throw invalid_spec_error("empirical_distribution_Z: horizon and sample "
                                 "count must be positive");
    grid_spec.validate();
    std::mt19937_64 rng(seed);
    std::vector<double> z(samples);
    for (std::size_t i = 0; i < samples; ++i)
        z[i] = log_echo_at(modes, detail::uniform_double(rng) * horizon);

    DistributionEstimate out;
    out.provenance = Provenance::empirical;

    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= static_cast<double>(samples);
    double mu2 = 0.0, mu3 = 0.0, mu4 = 0.0;
    for (double v : z) {
        const double d = v - mean;
        mu2 += d * d;
        mu3 += d * d * d;
        mu4 += d * d * d * d;
    }
    mu2 /= static_cast<double>(samples);
    mu3 /= static_cast<double>(samples);
    mu4 /= static_cast<double>(samples);
    out.mean = mean;
    out.variance = mu2;
    if (mu2 > 0.0) {
        out.skewness = mu3 / std::pow(mu2, 1.5);
        out.excess_kurtosis = mu4 / (mu2 * mu2) - 3.0;
    }

    if (samples == 1 || mu2 == 0.0) {
        out.degenerate = true;
        out.delta_location = mean;
        return out;
    }

    double lo, hi;
    if (grid_spec.automatic()) {
        const auto [mn, mx] = std::minmax_element(z.begin(), z.end());
        const double pad = 1e-3 * (*mx - *mn) + 1e-12;
        lo = *mn - pad;
        hi = *mx + pad;
    } else {
        lo = grid_spec.lo;
        hi = grid_spec.hi;
    }
    const int bins = grid_spec.points;
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    const double width = (hi - lo) / bins;
    for (double v : z) {
        int b = static_cast<int>((v - lo) / width);
        if (b < 0 || b >= bins) continue;
        counts[static_cast<std::size_t>(b)] += 1.0;
    }
    out.grid.resize(static_cast<std::size_t>(bins));
    out.density.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        out.grid[static_cast<std::size_t>(b)] = lo + (b + 0.5) * width;
        out.density[static_cast<std::size_t>(b)] =
            counts[static_cast<std::size_t>(b)] / (static_cast<double>(samples) * width);
    }
    normalize_density(out.grid, out.density);
    return out;
}

// Time average of L itself (not of Z) over random times; companion oracle for
// the closed-form mean.
inline double empirical_mean_echo(const std::vector<ModeData>& modes, double horizon,
                                  std::size_t samples, std::uint64_t seed) {
    if (horizon <= 0.0 || samples == 0)
        throw invalid_spec_error("empirical_mean_echo: horizon and sample count "
                                 "must be positive");
    std::mt19937_64 rng(seed);
    double acc = 0.0;
    for (std::size_t i = 0; i < samples; ++i)
        acc += echo_at(modes, detail::uniform_double(rng) * horizon);
    return acc / static_cast<double>(samples);
}

} // namespace qecho

#endif
