#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dlss/grid.hpp"

namespace dlss {

/// Scalar diagnostics of a solution snapshot.  Moments are periodic-trapezoid
/// quadratures (uniform Riemann sum times spacing).
struct DiagnosticsRecord {
    double t = 0.0;
    double a = 0.0;        ///< mass, integral of w
    double b = 0.0;        ///< mean, a^-1 integral of x w
    double c = 0.0;        ///< raw second moment, a^-1 integral of x^2 w
    double variance = 0.0; ///< c - b^2
    double momentum = 0.0; ///< integral of sqrt(w)
    double fisher = 0.0;   ///< 4 integral of (d/dx sqrt(w))^2
    std::optional<double> sup_dist_gauss;
    std::optional<double> sup_dist_tw;
    std::int64_t clamp_count = 0; ///< cumulative clamped points so far
};

struct Moments {
    double a;
    double b;
    double c;
    double variance() const { return c - b * b; }
};

/// Trapezoid moments of a non-negative, non-degenerate density sample.
Moments trapezoid_moments(const SampledFunction& w);

/// integral of sqrt(w) dx
double momentum_integral(const SampledFunction& w);

/// 4 * integral (d/dx sqrt(w))^2 dx, evaluated spectrally on v = sqrt(w).
/// Equals integral (w_x)^2 / w where w > 0.
double fisher_information(const SampledFunction& w);

/// Rescales w to the unit-mass, mean-zero, unit-variance profile
///   x -> (sigma/a) w(sigma x + b),  sigma = sqrt(c - b^2),
/// sampled on target_grid by 4-point cubic interpolation (0 outside the data
/// support).  With reflect set, returns the mirror image x -> value(-x).
SampledFunction normalize_density(const SampledFunction& w, const GridPtr& target_grid, bool reflect = false);

/// max over grid points of |f(x_j) - reference(x_j)|
double sup_distance(const SampledFunction& f, const std::function<double(double)>& reference);

struct PowerLawFit {
    double amplitude = 0.0;
    double exponent = 0.0;
    double t_min = 0.0;
    double residual = 0.0; ///< RMS residual on log-log
};

/// Ordinary least squares of log y on log t over the samples with t > t_min.
/// Requires at least 10 such samples, all positive.
PowerLawFit power_law_fit(const std::vector<double>& ts, const std::vector<double>& ys, double t_min);

struct FunctionalVerdict {
    bool ok = true;
    double worst_violation = 0.0; ///< magnitude of the worst violating step
    double worst_t = 0.0;         ///< time of the worst violating step
};

/// Monotonicity summary of the conserved/ordered functionals along a run.
struct LyapunovReport {
    double mass_max_drift = 0.0;  ///< max |a(t) - a(0)|
    double mass_worst_t = 0.0;
    FunctionalVerdict momentum_nondecreasing; ///< checked when L > 0
    FunctionalVerdict fisher_nonincreasing;   ///< checked when L > 0
    FunctionalVerdict mean_drift_sign;        ///< sign of db/dt vs sign of K, for t > 1
    bool checked_monotonicity = false;        ///< false when L == 0
    bool checked_mean_sign = false;           ///< false when K == 0
};

/// Step tolerance 1e-9 for the monotone functionals, as recorded.
LyapunovReport lyapunov_report(const std::vector<DiagnosticsRecord>& records, double K, double L);

} // namespace dlss
