#ifndef QECHO_ECHO_HPP
#define QECHO_ECHO_HPP

#include <cmath>
#include <vector>

#include "qecho/errors.hpp"
#include "qecho/xy_model.hpp"

namespace qecho {

enum class SeriesKind { echo, log_echo };

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
    SeriesKind kind = SeriesKind::echo;
};

// ln f_k at sin2 = sin^2(phase). Written so that the value is exactly 0 at
// sin2 = 0 and keeps full relative precision for weak quenches:
//   ln f = 2 log1p( -B s / ((1 + r)(1 + 1/c)) ),  B = (1 - c^-2) alpha,
//   r = sqrt(1 - B s).
inline double log_per_mode_factor_s(const ModeData& m, double sin2) {
    const double big_b = (1.0 - m.inv_c * m.inv_c) * m.alpha;
    const double rad = 1.0 - big_b * sin2;
    if (rad < -1e-12)
        throw numeric_accuracy_error("per_mode_factor: negative radicand; "
                                     "mode data violates its invariants");
    const double r = std::sqrt(rad < 0.0 ? 0.0 : rad);
    return 2.0 * std::log1p(-big_b * sin2 / ((1.0 + r) * (1.0 + m.inv_c)));
}

// Per-mode echo factor f_k evaluated at a free phase (Lambda^1_k t for the
// trajectory, a torus angle for phase averages).
inline double per_mode_factor(const ModeData& m, double phase) {
    const double s = std::sin(phase);
    return std::exp(log_per_mode_factor_s(m, s * s));
}

inline double log_echo_at(const std::vector<ModeData>& modes, double t) {
    double acc = 0.0;
    for (const auto& m : modes) {
        const double s = std::sin(m.lambda1 * t);
        acc += log_per_mode_factor_s(m, s * s);
    }
    return acc;
}

// L(t) = prod_{k>0} f_k(Lambda^1_k t), accumulated in log space so large
// chains do not underflow. L(0) = 1 exactly.
inline double echo_at(const std::vector<ModeData>& modes, double t) {
    return std::exp(log_echo_at(modes, t));
}

inline TimeSeries sample_series(const std::vector<ModeData>& modes,
                                const std::vector<double>& times,
                                SeriesKind kind = SeriesKind::echo) {
    if (times.empty())
        throw invalid_spec_error("sample_series: empty time grid");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1]))
            throw invalid_spec_error("sample_series: times must be strictly increasing");
    TimeSeries ts;
    ts.kind = kind;
    ts.times = times;
    ts.values.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double z = log_echo_at(modes, times[i]);
        ts.values[i] = (kind == SeriesKind::echo) ? std::exp(z) : z;
    }
    return ts;
}

} // namespace qecho

#endif
