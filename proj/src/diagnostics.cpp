#include "dlss/diagnostics.hpp"

#include <cmath>

#include "dlss/spectral.hpp"

namespace dlss {

Moments trapezoid_moments(const SampledFunction& w) {
    const double dx = w.grid->spacing();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double x = w.grid->point(j);
        const double v = w.values[j];
        s0 += v;
        s1 += x * v;
        s2 += x * x * v;
    }
    const double a = s0 * dx;
    if (!(a > 0.0)) throw Error(ErrorCode::domain, "degenerate density: non-positive mass");
    return Moments{a, s1 * dx / a, s2 * dx / a};
}

double momentum_integral(const SampledFunction& w) {
    const double dx = w.grid->spacing();
    double s = 0.0;
    for (double v : w.values) {
        if (v < 0.0) throw Error(ErrorCode::domain, "momentum integral of negative sample");
        s += std::sqrt(v);
    }
    return s * dx;
}

double fisher_information(const SampledFunction& w) {
    SampledFunction v = sqrt_elementwise(w);
    std::vector<double> d1;
    spectral_derivative_1(v, d1);
    double s = 0.0;
    for (double g : d1) s += g * g;
    return 4.0 * s * w.grid->spacing();
}

namespace {

// 4-point Lagrange interpolation on the uniform source grid; 0 outside the
// sampled interval (and in the two edge cells, where the data is required to
// be negligibly small anyway).
double cubic_interpolate(const SampledFunction& f, double x) {
    const Grid& g = *f.grid;
    const double x0 = g.point(0);
    const double dx = g.spacing();
    const std::size_t n = f.size();
    const double u = (x - x0) / dx;
    if (u < 0.0 || u > static_cast<double>(n - 1)) return 0.0;
    auto j = static_cast<std::ptrdiff_t>(std::floor(u));
    if (j < 1 || static_cast<std::size_t>(j) + 2 > n - 1) return 0.0;
    const double xi = u - static_cast<double>(j);
    const double fm1 = f.values[j - 1], f0 = f.values[j], f1 = f.values[j + 1], f2 = f.values[j + 2];
    const double lm1 = -xi * (xi - 1.0) * (xi - 2.0) / 6.0;
    const double l0 = (xi + 1.0) * (xi - 1.0) * (xi - 2.0) / 2.0;
    const double l1 = -(xi + 1.0) * xi * (xi - 2.0) / 2.0;
    const double l2 = (xi + 1.0) * xi * (xi - 1.0) / 6.0;
    return fm1 * lm1 + f0 * l0 + f1 * l1 + f2 * l2;
}

} // namespace

SampledFunction normalize_density(const SampledFunction& w, const GridPtr& target_grid, bool reflect) {
    const Moments m = trapezoid_moments(w);
    const double var = m.variance();
    if (!(var > 0.0)) throw Error(ErrorCode::domain, "degenerate density: non-positive variance");
    const double sigma = std::sqrt(var);
    const double scale = sigma / m.a;
    std::vector<double> out(target_grid->size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        double x = target_grid->point(j);
        if (reflect) x = -x;
        out[j] = scale * cubic_interpolate(w, sigma * x + m.b);
    }
    return SampledFunction(target_grid, std::move(out));
}

double sup_distance(const SampledFunction& f, const std::function<double(double)>& reference) {
    double worst = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        worst = std::max(worst, std::abs(f.values[j] - reference(f.grid->point(j))));
    return worst;
}

PowerLawFit power_law_fit(const std::vector<double>& ts, const std::vector<double>& ys, double t_min) {
    if (ts.size() != ys.size()) throw ConfigError("power_law_fit: series length mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] > t_min) {
            if (!(ys[i] > 0.0)) throw ConfigError("power_law_fit: non-positive sample in fit window");
            lx.push_back(std::log(ts[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    if (lx.size() < 10) throw ConfigError("power_law_fit: need at least 10 samples beyond t_min");

    const double n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        rss += r * r;
    }
    PowerLawFit fit;
    fit.amplitude = std::exp(intercept);
    fit.exponent = slope;
    fit.t_min = t_min;
    fit.residual = std::sqrt(rss / n);
    return fit;
}

LyapunovReport lyapunov_report(const std::vector<DiagnosticsRecord>& records, double K, double L) {
    if (records.size() < 3) throw ConfigError("lyapunov_report: need at least 3 records");
    constexpr double step_tol = 1e-9;

    LyapunovReport rep;
    rep.checked_monotonicity = L > 0.0;
    rep.checked_mean_sign = K != 0.0;

    const double a0 = records.front().a;
    for (const auto& r : records) {
        const double drift = std::abs(r.a - a0);
        if (drift > rep.mass_max_drift) {
            rep.mass_max_drift = drift;
            rep.mass_worst_t = r.t;
        }
    }

    const double ksign = (K > 0.0) ? 1.0 : -1.0;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& prev = records[i - 1];
        const auto& cur = records[i];
        if (rep.checked_monotonicity) {
            const double dm = cur.momentum - prev.momentum;
            if (dm < -step_tol && -dm > rep.momentum_nondecreasing.worst_violation) {
                rep.momentum_nondecreasing.ok = false;
                rep.momentum_nondecreasing.worst_violation = -dm;
                rep.momentum_nondecreasing.worst_t = cur.t;
            }
            const double df = cur.fisher - prev.fisher;
            if (df > step_tol && df > rep.fisher_nonincreasing.worst_violation) {
                rep.fisher_nonincreasing.ok = false;
                rep.fisher_nonincreasing.worst_violation = df;
                rep.fisher_nonincreasing.worst_t = cur.t;
            }
        }
        if (rep.checked_mean_sign && prev.t > 1.0) {
            const double db = ksign * (cur.b - prev.b);
            if (db < -step_tol && -db > rep.mean_drift_sign.worst_violation) {
                rep.mean_drift_sign.ok = false;
                rep.mean_drift_sign.worst_violation = -db;
                rep.mean_drift_sign.worst_t = cur.t;
            }
        }
    }
    return rep;
}

} // namespace dlss
