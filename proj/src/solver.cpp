#include "dlss/solver.hpp"

#include <cmath>

#include "dlss/spectral.hpp"

namespace dlss {

namespace {

constexpr double kBoundarySmall = 1e-8; ///< endpoint growth warning threshold
constexpr double kBoundaryInit = 1e-16; ///< endpoint smallness required of w0

/// Scratch buffers for the stage evaluations of one solve.
struct StageWorkspace {
    SampledFunction v; ///< sqrt of the stage field, reused across calls
    std::vector<double> d2, d3, d4;
    std::vector<double> stage;

    explicit StageWorkspace(const GridPtr& grid) : v(grid, std::vector<double>(grid->size(), 0.0)) {}
};

/// rhs evaluated in place: out[j] = 2K v d3[j] - 2L (v d4[j] - d2[j]^2).
///
/// The square root clamps tiny negatives to zero without touching `field`
/// itself: the drifting profile touches zero quadratically and the sampled
/// minima dip a few 1e-10 below zero at working resolutions.  Flooring the
/// stepped field would feed mass in through those points and ruin the exact
/// discrete mass conservation of this right-hand side, so only the sqrt sees
/// the clamp.  Anything below -floor_tol is treated as blow-up.
void rhs_into(const std::vector<double>& field, const SolverParams& params, StageWorkspace& ws,
              std::vector<double>& out, double t, std::int64_t* clamp_count) {
    const std::size_t n = field.size();
    for (std::size_t j = 0; j < n; ++j) {
        double x = field[j];
        if (x < 0.0) {
            if (x < -params.floor_tol) throw PositivityError("value below positivity floor", t);
            if (clamp_count) ++(*clamp_count);
            x = 0.0;
        }
        ws.v.values[j] = std::sqrt(x);
    }
    spectral_derivatives_234(ws.v, ws.d2, ws.d3, ws.d4);

    const double two_k = 2.0 * params.K();
    const double two_l = 2.0 * params.L();
    out.resize(n);
    bool finite = true;
    for (std::size_t j = 0; j < n; ++j) {
        const double vj = ws.v.values[j];
        const double r = two_k * vj * ws.d3[j] - two_l * (vj * ws.d4[j] - ws.d2[j] * ws.d2[j]);
        out[j] = r;
        finite = finite && std::isfinite(r);
    }
    if (!finite) throw InstabilityError("non-finite right-hand side", t);
}

} // namespace

void apply_floor(std::vector<double>& values, double floor_tol, double t, std::int64_t* clamped) {
    for (double& v : values) {
        if (v < 0.0) {
            if (v < -floor_tol) throw PositivityError("value below positivity floor", t);
            v = 0.0;
            if (clamped) ++(*clamped);
        }
    }
}

SampledFunction rhs(const SampledFunction& w, const SolverParams& params) {
    StageWorkspace ws(w.grid);
    std::vector<double> out;
    rhs_into(w.values, params, ws, out, 0.0, nullptr);
    return SampledFunction(w.grid, std::move(out));
}

namespace {

/// One RK4 step using a caller-provided workspace.
void rk4_step_into(const std::vector<double>& w, const SolverParams& params, StageWorkspace& ws,
                   std::vector<double>& k1, std::vector<double>& k2, std::vector<double>& k3,
                   std::vector<double>& k4, std::vector<double>& out, double t, std::int64_t* clamp_count) {
    const double h = params.h;
    const std::size_t n = w.size();

    rhs_into(w, params, ws, k1, t, clamp_count);

    ws.stage.resize(n);
    for (std::size_t j = 0; j < n; ++j) ws.stage[j] = w[j] + 0.5 * h * k1[j];
    rhs_into(ws.stage, params, ws, k2, t, clamp_count);

    for (std::size_t j = 0; j < n; ++j) ws.stage[j] = w[j] + 0.5 * h * k2[j];
    rhs_into(ws.stage, params, ws, k3, t, clamp_count);

    for (std::size_t j = 0; j < n; ++j) ws.stage[j] = w[j] + h * k3[j];
    rhs_into(ws.stage, params, ws, k4, t, clamp_count);

    out.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = w[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
}

} // namespace

SampledFunction rk4_step(const SampledFunction& w, const SolverParams& params, double t,
                         std::int64_t* clamp_count) {
    params.validate();
    StageWorkspace ws(w.grid);
    std::vector<double> k1, k2, k3, k4, out;
    rk4_step_into(w.values, params, ws, k1, k2, k3, k4, out, t, clamp_count);
    for (double v : out) {
        if (v < -params.floor_tol) throw PositivityError("step result below positivity floor", t + params.h);
    }
    return SampledFunction(w.grid, std::move(out));
}

SolveResult solve(const SampledFunction& w0, const SolverParams& params, const SolveOptions& options,
                  std::int64_t initial_clamp_count) {
    params.validate();
    const GridPtr grid = w0.grid;
    const std::size_t n = grid->size();

    const auto total_steps = static_cast<std::size_t>(std::llround(params.t_max / params.h));
    if (total_steps == 0) throw ConfigError("t_max shorter than one time step");
    if (options.start_step > total_steps) throw ConfigError("resume start step beyond horizon");

    SolveResult result;
    result.trajectory.params = params;
    result.trajectory.grid = grid;
    result.clamp_count = initial_clamp_count;

    std::vector<double> w = w0.values;
    if (options.start_step == 0) {
        if (std::abs(w.front()) > kBoundaryInit || std::abs(w.back()) > kBoundaryInit)
            throw ConfigError("initial data must be below 1e-16 at the grid endpoints");
        // Sanitize the initial data once; the stepped field is never floored.
        apply_floor(w, params.floor_tol, 0.0, &result.clamp_count);
    }

    StageWorkspace ws(grid);
    std::vector<double> k1, k2, k3, k4, w_next;
    SampledFunction view(grid, std::vector<double>(n, 0.0));

    auto record_snapshot = [&](std::size_t step) {
        result.trajectory.snapshots.push_back(Snapshot{static_cast<double>(step) * params.h, w});
    };
    auto record_diag = [&](std::size_t step) {
        const double t = static_cast<double>(step) * params.h;
        DiagnosticsRecord rec;
        rec.t = t;
        view.values = w;
        const Moments m = trapezoid_moments(view);
        rec.a = m.a;
        rec.b = m.b;
        rec.c = m.c;
        rec.variance = m.variance();
        // momentum and fisher take the sqrt: evaluate them on the clamped copy
        for (double& v : view.values)
            if (v < 0.0) v = 0.0;
        rec.momentum = momentum_integral(view);
        rec.fisher = fisher_information(view);
        rec.clamp_count = result.clamp_count;
        view.values = w;
        if (options.diag_hook) options.diag_hook(t, view, rec);
        result.trajectory.diagnostics.push_back(std::move(rec));

        const double edge = std::max(std::abs(w.front()), std::abs(w.back()));
        if (edge > kBoundarySmall) {
            BoundaryWarning warn{t, edge};
            if (!result.trajectory.first_boundary_warning) result.trajectory.first_boundary_warning = warn;
            if (!result.trajectory.worst_boundary_warning ||
                edge > result.trajectory.worst_boundary_warning->value)
                result.trajectory.worst_boundary_warning = warn;
        }
    };

    std::size_t step = options.start_step;
    if (step == 0) {
        // A resumed segment starts at a state the previous segment already
        // recorded, so only the fresh run records its initial state.
        record_snapshot(step);
        record_diag(step);
    }

    const std::size_t stop_step =
        options.max_steps_this_call == 0
            ? total_steps
            : std::min(total_steps, options.start_step + options.max_steps_this_call);

    while (step < stop_step) {
        const double t = static_cast<double>(step) * params.h;
        try {
            rk4_step_into(w, params, ws, k1, k2, k3, k4, w_next, t, &result.clamp_count);
        } catch (const InstabilityError& e) {
            result.aborted = true;
            result.abort_message = e.what();
            result.abort_time = e.time();
            break;
        }
        w.swap(w_next);
        ++step;

        for (double v : w)
            if (v < result.deepest_negative) result.deepest_negative = v;

        const bool last = (step == stop_step);
        if (options.snapshot_stride > 0 && step % options.snapshot_stride == 0 && !last)
            record_snapshot(step);
        if ((options.diag_stride > 0 && step % options.diag_stride == 0) || last) record_diag(step);
        if (last) record_snapshot(step);
    }

    result.final_w = std::move(w);
    result.end_step = step;
    result.reached_t_max = (step == total_steps) && !result.aborted;
    return result;
}

} // namespace dlss
