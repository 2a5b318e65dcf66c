#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dlss/diagnostics.hpp"
#include "dlss/grid.hpp"
#include "dlss/params.hpp"

namespace dlss {

/// Division-free right-hand side
///   f(w) = 2K v v_xxx - 2L (v v_xxxx - (v_xx)^2),  v = sqrt(w),
/// with spectral derivatives of v.  Values in [-floor_tol, 0) are clamped to
/// zero inside the square root (the field itself is untouched, which keeps
/// the discrete mass exactly conserved); values below -floor_tol raise a
/// positivity violation.
SampledFunction rhs(const SampledFunction& w, const SolverParams& params);

/// Clamp values in [-floor_tol, 0) to zero; `clamped` (if given) accumulates
/// the number of clamped points.  Values below -floor_tol raise a positivity
/// violation stamped with `t`.
void apply_floor(std::vector<double>& values, double floor_tol, double t, std::int64_t* clamped = nullptr);

/// One classical RK4 step w + (h/6)(k1 + 2 k2 + 2 k3 + k4).  Each stage
/// clamps its square-root input per rhs(); the result is positivity-guarded
/// but not modified.
SampledFunction rk4_step(const SampledFunction& w, const SolverParams& params, double t = 0.0,
                         std::int64_t* clamp_count = nullptr);

struct Snapshot {
    double t;
    std::vector<double> w;
};

struct BoundaryWarning {
    double t;
    double value; ///< max of the two endpoint samples
};

struct Trajectory {
    SolverParams params;
    GridPtr grid;
    std::vector<Snapshot> snapshots;
    std::vector<DiagnosticsRecord> diagnostics;
    std::optional<BoundaryWarning> first_boundary_warning;
    std::optional<BoundaryWarning> worst_boundary_warning;
};

struct SolveOptions {
    std::size_t snapshot_stride = 0; ///< 0: record only first and last states
    std::size_t diag_stride = 100;
    std::size_t start_step = 0;          ///< resume: first step index of this segment
    std::size_t max_steps_this_call = 0; ///< 0: run to t_max; else stop early (clean halt)
    /// Invoked after the built-in scalar diagnostics are filled, so callers
    /// can attach profile distances to the record.
    std::function<void(double t, const SampledFunction& w, DiagnosticsRecord& rec)> diag_hook;
};

struct SolveResult {
    Trajectory trajectory;
    std::vector<double> final_w;
    std::size_t end_step = 0;
    bool reached_t_max = false;
    bool aborted = false;       ///< instability/positivity abort (partial trajectory kept)
    std::string abort_message;
    double abort_time = 0.0;
    std::int64_t clamp_count = 0;  ///< cumulative clamped points (including start offset)
    double deepest_negative = 0.0; ///< most negative touchdown dip seen in the stepped field
};

/// Fixed-step RK4 solve from w0 (at t = start_step * h) until t_max, recording
/// snapshots and diagnostics at the given strides (plus the first and final
/// states).  w0 must be >= 0 up to the floor and below 1e-16 at the two grid
/// endpoints.  On instability the partial trajectory is returned with the
/// abort fields set.  `initial_clamp_count` seeds the cumulative counter when
/// resuming.
SolveResult solve(const SampledFunction& w0, const SolverParams& params, const SolveOptions& options = {},
                  std::int64_t initial_clamp_count = 0);

} // namespace dlss
