#pragma once

#include "dlss/errors.hpp"

namespace dlss {

/// Physical and stepping parameters of the prolonged equation
///   w_t = 2K v v_xxx - 2L (v v_xxxx - (v_xx)^2),  v = sqrt(w),
/// with K = (4/3) mu C and L = eps (2C - 2C^2).
struct SolverParams {
    double mu = 0.0;       ///< bias, in [-1, 1]
    double C = 0.25;       ///< rate constant, in [0, 1/4]
    double eps = 0.0;      ///< expansion parameter, >= 0
    double h = 0.0025;     ///< time step
    double t_max = 1.0;    ///< horizon
    /// Positivity floor: square-root inputs in [-floor_tol, 0) clamp to 0,
    /// anything below is treated as blow-up.  The default absorbs the
    /// quadratic touchdown dips of drifting profiles (a few 1e-10 at the
    /// working resolutions) while still catching real divergence.
    double floor_tol = 1e-8;

    double K() const noexcept { return (4.0 / 3.0) * mu * C; }
    double L() const noexcept { return eps * (2.0 * C - 2.0 * C * C); }

    void validate() const {
        if (!(mu >= -1.0 && mu <= 1.0)) throw ConfigError("mu must lie in [-1, 1]");
        if (!(C >= 0.0 && C <= 0.25)) throw ConfigError("C must lie in [0, 1/4]");
        if (!(eps >= 0.0)) throw ConfigError("eps must be non-negative");
        if (!(h > 0.0)) throw ConfigError("time step h must be positive");
        if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
        if (!(floor_tol >= 0.0)) throw ConfigError("floor_tol must be non-negative");
    }
};

} // namespace dlss
