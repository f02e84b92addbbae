#ifndef QECHO_QECHO_HPP
#define QECHO_QECHO_HPP

#include "qecho/distribution.hpp"
#include "qecho/echo.hpp"
#include "qecho/errors.hpp"
#include "qecho/generic_quench.hpp"
#include "qecho/parallel.hpp"
#include "qecho/quadrature.hpp"
#include "qecho/small_quench.hpp"
#include "qecho/special_functions.hpp"
#include "qecho/thermal_fidelity.hpp"
#include "qecho/torus_stats.hpp"
#include "qecho/xy_model.hpp"

namespace qecho {

inline constexpr const char* version = "1.0.0";

} // namespace qecho

#endif
