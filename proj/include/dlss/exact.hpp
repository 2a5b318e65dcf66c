#pragma once

#include <array>
#include <vector>

#include "dlss/grid.hpp"
#include "dlss/params.hpp"

namespace dlss {

/// Closed-form solutions of the v-equation  v_t - K v_xxx = -L (v_xxxx - (v_xx)^2 / v).
///
/// sin/sinh are traveling waves (exact for any K, L away from zeros of v);
/// the Airy-based profiles
///   v(t,x) = t^(-1/3) Ai((x + (2L/3K) log t) / (-3Kt)^(1/3))
/// require t > 0 and K < 0 so the cube root is real (the mirrored K > 0 case
/// is the x-reflection).
enum class ExactKind {
    sin_wave,
    sinh_wave,
    airy_profile,
    airy_second_kind_profile,
};

struct ExactSolution {
    ExactKind kind;
    SolverParams params;
};

double evaluate_exact(const ExactSolution& sol, double t, double x);

/// Five consecutive samples of a time-dependent field, used for the
/// fourth-order central time derivative at the middle slice.
struct TimeSlices {
    GridPtr grid;
    std::array<std::vector<double>, 5> v; ///< at t_center + k*dt, k = -2..2
    double dt = 0.0;
};

/// Samples an exact solution into five slices centred at t_center.
TimeSlices sample_exact_slices(const ExactSolution& sol, const GridPtr& grid, double t_center, double dt);

enum class SpatialScheme {
    spectral,          ///< the solver's own periodic operators
    finite_difference, ///< 5-point stencils, for non-periodic windows
};

struct ResidualOptions {
    double min_abs_v = 1e-6;  ///< admit points with |v| above this
    double x_min = -1e300;    ///< admissible window (tapered fields exclude
    double x_max = 1e300;     ///< their roll-off region)
    SpatialScheme scheme = SpatialScheme::spectral;
};

/// Sup over admitted grid points of
///   |dv/dt - K v_xxx + L (v_xxxx - (v_xx)^2 / v)|
/// on the middle slice.  With L = 0 the division term is dropped entirely.
double v_residual(const TimeSlices& slices, const SolverParams& params, const ResidualOptions& options = {});

/// Checks the lift identity between the two forms of the equation: for
/// w = v^2 the spatial w-operator equals 2v times the spatial v-operator.
/// Returns the sup-norm of the mismatch; v must stay above 1e-6 in absolute
/// value.
double w_residual_identity_check(const SampledFunction& v, const SolverParams& params);

/// C-infinity taper: 1 on [-flat, flat], 0 outside [-zero, zero].
std::vector<double> smooth_window(const GridPtr& grid, double flat_radius, double zero_radius);

} // namespace dlss
