#ifndef QECHO_GENERIC_QUENCH_HPP
#define QECHO_GENERIC_QUENCH_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qecho/distribution.hpp"
#include "qecho/errors.hpp"
#include "qecho/small_quench.hpp"

namespace qecho {

// Spectral data of a generic non-degenerate quench: eigenvalues E_n of the
// post-quench Hamiltonian and weights p_n = |<n|psi_0>|^2. chi is filled on
// the perturbative branch only.
struct SpectralQuench {
    std::vector<double> energies;
    std::vector<double> weights;
    double chi = 0.0;
    bool perturbative = false;
    bool advisory_large_perturbation = false;
};

namespace detail {

inline void require_hermitian(const Eigen::MatrixXcd& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 2)
        throw invalid_spec_error(std::string(who) + ": need a square matrix, d >= 2");
    const double scale = m.norm() + 1e-300;
    if ((m - m.adjoint()).norm() > 1e-10 * scale)
        throw invalid_spec_error(std::string(who) + ": matrix is not Hermitian");
}

inline void require_non_degenerate(const Eigen::VectorXd& ev, const char* who) {
    const double range = ev(ev.size() - 1) - ev(0);
    for (int i = 0; i + 1 < ev.size(); ++i)
        if (ev(i + 1) - ev(i) <= 1e-9 * range)
            throw degeneracy_error(i, i + 1,
                                   std::string(who) + ": near-degenerate levels " +
                                       std::to_string(i) + " and " + std::to_string(i + 1));
}

} // namespace detail

// Exact branch: diagonalize H1 and project the initial state.
inline SpectralQuench spectral_quench_exact(const Eigen::MatrixXcd& h1,
                                            const Eigen::VectorXcd& psi0) {
    detail::require_hermitian(h1, "spectral_quench_exact");
    if (psi0.size() != h1.rows())
        throw invalid_spec_error("spectral_quench_exact: state dimension mismatch");
    if (std::abs(psi0.norm() - 1.0) > 1e-8)
        throw invalid_spec_error("spectral_quench_exact: initial state not normalized");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h1);
    detail::require_non_degenerate(es.eigenvalues(), "spectral_quench_exact");

    SpectralQuench sq;
    const int d = static_cast<int>(h1.rows());
    sq.energies.resize(static_cast<std::size_t>(d));
    sq.weights.resize(static_cast<std::size_t>(d));
    double total = 0.0;
    for (int n = 0; n < d; ++n) {
        sq.energies[static_cast<std::size_t>(n)] = es.eigenvalues()(n);
        const std::complex<double> amp = es.eigenvectors().col(n).adjoint() * psi0;
        sq.weights[static_cast<std::size_t>(n)] = std::norm(amp);
        total += std::norm(amp);
    }
    for (double& w : sq.weights) w /= total;
    return sq;
}

// Perturbative branch for H = H0 + strength * V:
// p_n = strength^2 |<n|V|0>|^2 / (E_n - E_0)^2, p_0 = 1 - sum_{n>0} p_n,
// chi = sum_{n>0} p_n (the fidelity susceptibility of the quench).
inline SpectralQuench spectral_quench_perturbative(const Eigen::MatrixXcd& h0,
                                                   const Eigen::MatrixXcd& v,
                                                   double strength) {
    detail::require_hermitian(h0, "spectral_quench_perturbative");
    detail::require_hermitian(v, "spectral_quench_perturbative");
    if (v.rows() != h0.rows())
        throw invalid_spec_error("spectral_quench_perturbative: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h0);
    detail::require_non_degenerate(es.eigenvalues(), "spectral_quench_perturbative");

    SpectralQuench sq;
    sq.perturbative = true;
    const int d = static_cast<int>(h0.rows());
    const Eigen::VectorXcd ground = es.eigenvectors().col(0);
    const Eigen::VectorXcd v_ground = v * ground;
    const double e0 = es.eigenvalues()(0);
    sq.energies.resize(static_cast<std::size_t>(d));
    sq.weights.assign(static_cast<std::size_t>(d), 0.0);
    double tail = 0.0;
    for (int n = 0; n < d; ++n) {
        sq.energies[static_cast<std::size_t>(n)] = es.eigenvalues()(n);
        if (n == 0) continue;
        const std::complex<double> me = es.eigenvectors().col(n).adjoint() * v_ground;
        const double gap = es.eigenvalues()(n) - e0;
        const double p = strength * strength * std::norm(me) / (gap * gap);
        sq.weights[static_cast<std::size_t>(n)] = p;
        tail += p;
    }
    sq.weights[0] = 1.0 - tail;
    sq.chi = tail;
    const double min_gap = es.eigenvalues()(1) - e0;
    const double first_order = std::abs(strength) * v.operatorNorm();
    sq.advisory_large_perturbation = first_order > 0.1 * min_gap;
    return sq;
}

// Time-averaged echo mean(L) = sum_n p_n^2.
inline double generic_mean_echo(const SpectralQuench& sq) {
    double acc = 0.0;
    for (double p : sq.weights) acc += p * p;
    return acc;
}

// L(t) = |sum_n p_n e^{-i E_n t}|^2 for the brute-force time-average oracle.
inline double generic_echo_at(const SpectralQuench& sq, double t) {
    std::complex<double> amp{0.0, 0.0};
    for (std::size_t n = 0; n < sq.weights.size(); ++n)
        amp += sq.weights[n] * std::polar(1.0, -sq.energies[n] * t);
    return std::norm(amp);
}

inline double generic_mean_echo_time_average(const SpectralQuench& sq, double horizon,
                                             std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double acc = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53 * horizon;
        acc += generic_echo_at(sq, t);
    }
    return acc / static_cast<double>(samples);
}

// Second cumulant of Z = ln L in the small-quench model (a_j = 2 p_j):
// kappa_2 = 2 sum_{n>0} p_n^2 <= 2 chi.
inline double generic_kappa2(const SpectralQuench& sq) {
    double acc = 0.0;
    for (std::size_t n = 1; n < sq.weights.size(); ++n) acc += sq.weights[n] * sq.weights[n];
    return 2.0 * acc;
}

// Distribution of ln L for the perturbative branch: delegates to the
// tight-binding-DOS machinery with amplitudes a_j = 2 p_j and mean shift
// 2 ln p_0.
inline DistributionEstimate generic_logecho_distribution(const SpectralQuench& sq,
                                                         GridSpec grid_spec = {},
                                                         DosOptions opt = {}) {
    if (!sq.perturbative)
        throw invalid_spec_error("generic_logecho_distribution: requires the "
                                 "perturbative branch");
    AmplitudeSet set;
    set.mean_shift = 2.0 * std::log(sq.weights.at(0));
    for (std::size_t n = 1; n < sq.weights.size(); ++n) {
        set.amplitudes.push_back(2.0 * sq.weights[n]);
        set.frequencies.push_back(sq.energies[n] - sq.energies[0]);
    }
    std::vector<std::size_t> order(set.amplitudes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(set.amplitudes[i]) > std::abs(set.amplitudes[j]);
    });
    AmplitudeSet sorted;
    sorted.mean_shift = set.mean_shift;
    for (std::size_t i : order) {
        sorted.amplitudes.push_back(set.amplitudes[i]);
        sorted.frequencies.push_back(set.frequencies[i]);
    }
    const int n_max = auto_n_max(sorted);
    return dos_distribution(sorted, n_max, grid_spec, opt);
}

// Seeded dense GUE-style Hermitian matrix; degeneracies are measure zero.
inline Eigen::MatrixXcd random_hermitian(int dim, std::uint64_t seed) {
    if (dim < 2 || dim > 512)
        throw invalid_spec_error("random_hermitian: dimension must be in 2..512");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    return 0.5 * (a + Eigen::MatrixXcd(a.adjoint()));
}

} // namespace qecho

#endif
