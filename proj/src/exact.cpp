#include "dlss/exact.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_airy.h>

#include <cmath>

#include "dlss/spectral.hpp"

namespace dlss {

namespace {

/// Airy evaluation for the exact-solution profiles.  Unlike the public
/// airy() op this has no [-30, 30] contract: Ai underflows harmlessly on the
/// right and GSL handles large negative arguments with its own asymptotics.
double airy_value(ExactKind kind, double z) {
    gsl_sf_result r;
    if (kind == ExactKind::airy_profile) {
        if (z > 100.0) return 0.0;
        if (gsl_sf_airy_Ai_e(z, GSL_PREC_DOUBLE, &r) != 0)
            throw RangeError("Ai evaluation failed at z = " + std::to_string(z));
    } else {
        if (gsl_sf_airy_Bi_e(z, GSL_PREC_DOUBLE, &r) != 0)
            throw RangeError("Bi evaluation failed (overflow?) at z = " + std::to_string(z));
    }
    return r.val;
}

} // namespace

double evaluate_exact(const ExactSolution& sol, double t, double x) {
    const double K = sol.params.K();
    const double L = sol.params.L();
    switch (sol.kind) {
        case ExactKind::sin_wave: return std::sin(x - K * t);
        case ExactKind::sinh_wave: return std::sinh(x + K * t);
        case ExactKind::airy_profile:
        case ExactKind::airy_second_kind_profile: {
            if (!(t > 0.0)) throw DomainError("airy profiles need t > 0", 0, t);
            if (!(K < 0.0))
                throw ConfigError("airy profiles need K < 0 (the K > 0 case is the x-reflection)");
            const double scale = std::cbrt(-3.0 * K * t);
            const double z = (x + (2.0 * L / (3.0 * K)) * std::log(t)) / scale;
            return airy_value(sol.kind, z) / std::cbrt(t);
        }
    }
    throw InternalError("unknown exact solution kind");
}

TimeSlices sample_exact_slices(const ExactSolution& sol, const GridPtr& grid, double t_center, double dt) {
    TimeSlices out;
    out.grid = grid;
    out.dt = dt;
    for (int k = -2; k <= 2; ++k) {
        const double t = t_center + static_cast<double>(k) * dt;
        auto& slice = out.v[static_cast<std::size_t>(k + 2)];
        slice.resize(grid->size());
        for (std::size_t j = 0; j < grid->size(); ++j) slice[j] = evaluate_exact(sol, t, grid->point(j));
    }
    return out;
}

namespace {

struct SpatialDerivatives {
    std::vector<double> d2, d3, d4;
    std::size_t edge_margin = 0; ///< points to skip at each end (FD stencils)
};

SpatialDerivatives spatial_derivatives(const SampledFunction& v, SpatialScheme scheme) {
    SpatialDerivatives out;
    if (scheme == SpatialScheme::spectral) {
        spectral_derivatives_234(v, out.d2, out.d3, out.d4);
        return out;
    }
    const std::size_t n = v.size();
    const double h = v.grid->spacing();
    out.d2.assign(n, 0.0);
    out.d3.assign(n, 0.0);
    out.d4.assign(n, 0.0);
    out.edge_margin = 2;
    for (std::size_t j = 2; j + 2 < n; ++j) {
        const double vm2 = v.values[j - 2], vm1 = v.values[j - 1], v0 = v.values[j];
        const double vp1 = v.values[j + 1], vp2 = v.values[j + 2];
        out.d2[j] = (-vp2 + 16.0 * vp1 - 30.0 * v0 + 16.0 * vm1 - vm2) / (12.0 * h * h);
        out.d3[j] = (vp2 - 2.0 * vp1 + 2.0 * vm1 - vm2) / (2.0 * h * h * h);
        out.d4[j] = (vp2 - 4.0 * vp1 + 6.0 * v0 - 4.0 * vm1 + vm2) / (h * h * h * h);
    }
    return out;
}

} // namespace

double v_residual(const TimeSlices& slices, const SolverParams& params, const ResidualOptions& options) {
    const GridPtr& grid = slices.grid;
    const std::size_t n = grid->size();
    if (!(slices.dt > 0.0)) throw ConfigError("time slices need dt > 0");

    SampledFunction center(grid, slices.v[2]);
    const auto sd = spatial_derivatives(center, options.scheme);

    const double K = params.K();
    const double L = params.L();
    const double inv_12dt = 1.0 / (12.0 * slices.dt);

    double worst = 0.0;
    for (std::size_t j = sd.edge_margin; j < n - sd.edge_margin; ++j) {
        const double x = grid->point(j);
        if (x < options.x_min || x > options.x_max) continue;
        const double vj = slices.v[2][j];
        if (std::abs(vj) <= options.min_abs_v) continue;
        if (L != 0.0 && std::abs(vj) < 1e-12)
            throw DomainError("residual evaluation too close to a zero of v", j, vj);

        const double dvdt =
            (slices.v[0][j] - 8.0 * slices.v[1][j] + 8.0 * slices.v[3][j] - slices.v[4][j]) * inv_12dt;
        double r = dvdt - K * sd.d3[j];
        if (L != 0.0) r += L * (sd.d4[j] - sd.d2[j] * sd.d2[j] / vj);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double w_residual_identity_check(const SampledFunction& v, const SolverParams& params) {
    const std::size_t n = v.size();
    for (std::size_t j = 0; j < n; ++j)
        if (!(std::abs(v.values[j]) > 1e-6))
            throw DomainError("identity check requires |v| > 1e-6", j, v.values[j]);

    const double K = params.K();
    const double L = params.L();

    // v side: S_v = K v''' - L (v'''' - (v'')^2 / v)
    std::vector<double> vd2, vd3, vd4;
    spectral_derivatives_234(v, vd2, vd3, vd4);

    // w side: S_w = K (w''' - 3/4 (g)') - L (w'''' - (g)''), g = (w')^2 / w
    SampledFunction w = square_elementwise(v);
    std::vector<double> wd2, wd3, wd4;
    spectral_derivatives_234(w, wd2, wd3, wd4);
    SampledFunction w1 = spectral_derivative(w, 1);
    SampledFunction g(v.grid, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) g.values[j] = w1.values[j] * w1.values[j] / w.values[j];
    SampledFunction g1 = spectral_derivative(g, 1);
    SampledFunction g2 = spectral_derivative(g, 2);

    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double sv = K * vd3[j] - L * (vd4[j] - vd2[j] * vd2[j] / v.values[j]);
        const double sw = K * (wd3[j] - 0.75 * g1.values[j]) - L * (wd4[j] - g2.values[j]);
        worst = std::max(worst, std::abs(sw - 2.0 * v.values[j] * sv));
    }
    return worst;
}

std::vector<double> smooth_window(const GridPtr& grid, double flat_radius, double zero_radius) {
    if (!(0.0 < flat_radius && flat_radius < zero_radius))
        throw ConfigError("smooth_window needs 0 < flat_radius < zero_radius");
    auto ramp = [](double u) { return u <= 0.0 ? 0.0 : std::exp(-1.0 / u); };
    // C-infinity transition s: 1 at u=0 falling to 0 at u=1
    auto s = [&](double u) {
        const double a = ramp(1.0 - u);
        const double b = ramp(u);
        return a / (a + b);
    };
    std::vector<double> out(grid->size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double r = std::abs(grid->point(j));
        if (r <= flat_radius) {
            out[j] = 1.0;
        } else if (r >= zero_radius) {
            out[j] = 0.0;
        } else {
            out[j] = s((r - flat_radius) / (zero_radius - flat_radius));
        }
    }
    return out;
}

} // namespace dlss
