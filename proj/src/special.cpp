#include "dlss/special.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_airy.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

namespace dlss {

namespace {

void disable_gsl_abort() {
    static std::once_flag flag;
    std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

} // namespace

AiryValues airy(double x) {
    disable_gsl_abort();
    if (!(std::abs(x) <= 30.0)) throw RangeError("airy evaluation limited to |x| <= 30");
    gsl_sf_result ai, bi, aip, bip;
    int status = gsl_sf_airy_Ai_e(x, GSL_PREC_DOUBLE, &ai);
    status |= gsl_sf_airy_Bi_e(x, GSL_PREC_DOUBLE, &bi);
    status |= gsl_sf_airy_Ai_deriv_e(x, GSL_PREC_DOUBLE, &aip);
    status |= gsl_sf_airy_Bi_deriv_e(x, GSL_PREC_DOUBLE, &bip);
    if (status != 0) throw InternalError("airy evaluation failed");
    return AiryValues{ai.val, bi.val, aip.val, bip.val};
}

namespace {

double hm_left_bc(double x_lo) {
    return std::sqrt(-x_lo / 2.0) * (1.0 + 1.0 / (8.0 * x_lo * x_lo * x_lo));
}

/// Tridiagonal solve (Thomas algorithm); diag/upper/lower overwritten.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag, std::vector<double>& upper,
                       std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

/// Damped Newton on the interior unknowns of the second-order discretization.
/// Returns the max-norm of the final residual.
double newton_solve(std::vector<double>& q, const std::vector<double>& xs, double delta) {
    const std::size_t n = q.size();
    const std::size_t m = n - 2; // interior unknowns
    const double inv_d2 = 1.0 / (delta * delta);

    auto residual = [&](const std::vector<double>& qq, std::vector<double>& out) {
        out.resize(m);
        double norm = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double r = (qq[i - 1] - 2.0 * qq[i] + qq[i + 1]) * inv_d2 - xs[i] * qq[i] -
                             2.0 * qq[i] * qq[i] * qq[i];
            out[i - 1] = r;
            norm = std::max(norm, std::abs(r));
        }
        return norm;
    };

    std::vector<double> res, lower(m), diag(m), upper(m), step(m);
    std::vector<double> trial(n);
    double res_norm = residual(q, res);

    for (int iter = 0; iter < 80; ++iter) {
        if (res_norm < 1e-10) return res_norm;
        for (std::size_t i = 0; i < m; ++i) {
            lower[i] = inv_d2;
            upper[i] = inv_d2;
            diag[i] = -2.0 * inv_d2 - xs[i + 1] - 6.0 * q[i + 1] * q[i + 1];
            step[i] = -res[i];
        }
        solve_tridiagonal(lower, diag, upper, step);

        // backtracking line search
        double s = 1.0;
        std::vector<double> trial_res;
        for (int back = 0; back < 40; ++back) {
            trial = q;
            for (std::size_t i = 0; i < m; ++i) trial[i + 1] += s * step[i];
            const double trial_norm = residual(trial, trial_res);
            if (trial_norm < res_norm) {
                q = trial;
                res = trial_res;
                res_norm = trial_norm;
                break;
            }
            s *= 0.5;
            if (back == 39) return res_norm; // stalled; caller decides
        }
    }
    return res_norm;
}

std::vector<double> hm_solve_grid(double x_lo, double x_hi, std::size_t n_points) {
    const double delta = (x_hi - x_lo) / static_cast<double>(n_points - 1);
    std::vector<double> xs(n_points), q(n_points);
    for (std::size_t i = 0; i < n_points; ++i) xs[i] = x_lo + delta * static_cast<double>(i);

    // Initial guess: blend of the two asymptotic branches.
    for (std::size_t i = 0; i < n_points; ++i) {
        const double x = xs[i];
        const double left = std::sqrt(std::max(-x, 0.0) / 2.0);
        const double right = (x >= -30.0 && x <= 30.0) ? airy(x).ai : 0.0;
        const double blend = 1.0 / (1.0 + std::exp(-4.0 * x)); // -> 1 on the right
        q[i] = blend * right + (1.0 - blend) * left;
    }
    q.front() = hm_left_bc(x_lo);
    q.back() = airy(std::min(x_hi, 30.0)).ai;

    // The FD residual evaluates with ~|q|/delta^2 * eps round-off, so the
    // attainable floor sits around 1e-11; anything above 1e-9 means a stall.
    const double res = newton_solve(q, xs, delta);
    if (!(res < 1e-9)) throw SolveError("Hastings-McLeod Newton iteration did not converge", res);
    for (double v : q)
        if (!(v > 0.0)) throw SolveError("Hastings-McLeod solve left the positive branch", res);
    return q;
}

} // namespace

HastingsMcLeodTable hastings_mcleod(double x_lo, double x_hi, std::size_t n_points) {
    if (!(x_lo <= -8.0)) throw ConfigError("hastings_mcleod requires x_lo <= -8");
    if (!(x_hi >= 8.0)) throw ConfigError("hastings_mcleod requires x_hi >= 8");
    if (x_hi > 30.0 || x_lo < -30.0) throw ConfigError("hastings_mcleod span limited to [-30, 30]");
    if (n_points < 201 || n_points % 2 == 0)
        throw ConfigError("hastings_mcleod requires an odd n_points >= 201");

    // Richardson extrapolation of the second-order scheme: combine the target
    // grid with a half-spacing solve sharing its nodes.
    auto coarse = hm_solve_grid(x_lo, x_hi, n_points);
    auto fine = hm_solve_grid(x_lo, x_hi, 2 * n_points - 1);

    HastingsMcLeodTable table;
    table.xs.resize(n_points);
    table.q.resize(n_points);
    const double delta = (x_hi - x_lo) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        table.xs[i] = x_lo + delta * static_cast<double>(i);
        table.q[i] = (4.0 * fine[2 * i] - coarse[i]) / 3.0;
    }

    // q' by centered differences (4th order inside, one-sided at the edges).
    table.q_prime.resize(n_points);
    const auto& q = table.q;
    for (std::size_t i = 2; i + 2 < n_points; ++i)
        table.q_prime[i] = (-q[i + 2] + 8.0 * q[i + 1] - 8.0 * q[i - 1] + q[i - 2]) / (12.0 * delta);
    auto one_sided = [&](std::size_t i, int dir) {
        const double s = static_cast<double>(dir);
        return s *
               (-25.0 * q[i] + 48.0 * q[i + dir] - 36.0 * q[i + 2 * dir] + 16.0 * q[i + 3 * dir] -
                3.0 * q[i + 4 * dir]) /
               (12.0 * delta);
    };
    table.q_prime[0] = one_sided(0, +1);
    table.q_prime[1] = one_sided(1, +1);
    table.q_prime[n_points - 1] = one_sided(n_points - 1, -1);
    table.q_prime[n_points - 2] = one_sided(n_points - 2, -1);

    // Achieved ODE residual, measured with a 6th-order stencil so the
    // extrapolated table is tested beyond its own discretization order.
    double worst = 0.0;
    for (std::size_t i = 3; i + 3 < n_points; ++i) {
        const double qpp = (2.0 * q[i - 3] - 27.0 * q[i - 2] + 270.0 * q[i - 1] - 490.0 * q[i] +
                            270.0 * q[i + 1] - 27.0 * q[i + 2] + 2.0 * q[i + 3]) /
                           (180.0 * delta * delta);
        worst = std::max(worst, std::abs(qpp - table.xs[i] * q[i] - 2.0 * q[i] * q[i] * q[i]));
    }
    table.tolerance_achieved = worst;
    return table;
}

namespace {

/// int_s^inf Ai dt for s >= 8, first two asymptotic terms.
double airy_tail_integral(double s) {
    const double zeta = (2.0 / 3.0) * std::pow(s, 1.5);
    return 0.5 / std::sqrt(M_PI) * std::pow(s, -0.75) * std::exp(-zeta) * (1.0 - 41.0 / (48.0 * zeta));
}

} // namespace

GoeDensityTable goe_density(const HastingsMcLeodTable& table) {
    const std::size_t n = table.xs.size();
    if (n < 3 || table.x_lo() > -8.0 || table.x_hi() < 8.0)
        throw ConfigError("goe_density requires a table spanning at least [-8, 8]");
    const double delta = table.spacing();
    const auto& q = table.q;
    const auto& qp = table.q_prime;
    const auto& xs = table.xs;

    // Right-tail closures beyond the table.
    const double tail_q = airy_tail_integral(table.x_hi());
    const double tail_q2 = 0.0;  // int Ai^2 beyond 8 is ~1e-21
    const double tail_tq2 = 0.0;

    // Cumulative trapezoids from the right with Euler-Maclaurin endpoint
    // corrections (the q' table buys two extra orders of accuracy).
    std::vector<double> int_q(n), int_q2(n), int_tq2(n);
    int_q[n - 1] = tail_q;
    int_q2[n - 1] = tail_q2;
    int_tq2[n - 1] = tail_tq2;
    for (std::size_t i = n - 1; i-- > 0;) {
        int_q[i] = int_q[i + 1] + 0.5 * delta * (q[i] + q[i + 1]);
        int_q2[i] = int_q2[i + 1] + 0.5 * delta * (q[i] * q[i] + q[i + 1] * q[i + 1]);
        int_tq2[i] = int_tq2[i + 1] + 0.5 * delta * (xs[i] * q[i] * q[i] + xs[i + 1] * q[i + 1] * q[i + 1]);
    }
    const double corr = delta * delta / 12.0;
    GoeDensityTable out;
    out.xs = xs;
    out.q = q;
    out.density.resize(n);
    out.cdf.resize(n);
    out.qsq_int.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double em_q = corr * (qp[i] - qp[n - 1]);
        const double em_q2 = corr * (2.0 * q[i] * qp[i] - 2.0 * q[n - 1] * qp[n - 1]);
        const double em_tq2 = corr * ((q[i] * q[i] + 2.0 * xs[i] * q[i] * qp[i]) -
                                      (q[n - 1] * q[n - 1] + 2.0 * xs[n - 1] * q[n - 1] * qp[n - 1]));
        const double i1 = int_q[i] + em_q;
        const double i3 = int_q2[i] + em_q2;
        const double i2 = (int_tq2[i] + em_tq2) - xs[i] * i3;
        const double f1 = std::exp(-0.5 * i1 - 0.5 * i2);
        out.cdf[i] = f1;
        out.qsq_int[i] = i3;
        out.density[i] = f1 * 0.5 * (q[i] + i3);
    }

    // Moments by trapezoid over the table (the integrands vanish at the ends,
    // so the composite rule is superalgebraically accurate here).
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wgt = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        const double f = wgt * out.density[i];
        m0 += f;
        m1 += f * xs[i];
        m2 += f * xs[i] * xs[i];
    }
    m0 *= delta;
    m1 *= delta;
    m2 *= delta;
    out.mean = m1 / m0;
    out.variance = m2 / m0 - out.mean * out.mean;
    return out;
}

TwProfile::TwProfile(std::shared_ptr<const GoeDensityTable> table, bool reflect)
    : table_(std::move(table)), reflect_(reflect) {
    sigma_ = std::sqrt(table_->variance);
}

namespace {

/// Cubic interpolation within the GOE table.
double table_interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    const double delta = xs[1] - xs[0];
    const double u = (x - xs.front()) / delta;
    const std::size_t n = xs.size();
    auto j = static_cast<std::ptrdiff_t>(std::floor(u));
    j = std::max<std::ptrdiff_t>(1, std::min<std::ptrdiff_t>(j, static_cast<std::ptrdiff_t>(n) - 3));
    const double xi = u - static_cast<double>(j);
    const double fm1 = ys[j - 1], f0 = ys[j], f1 = ys[j + 1], f2 = ys[j + 2];
    const double lm1 = -xi * (xi - 1.0) * (xi - 2.0) / 6.0;
    const double l0 = (xi + 1.0) * (xi - 1.0) * (xi - 2.0) / 2.0;
    const double l1 = -(xi + 1.0) * xi * (xi - 2.0) / 2.0;
    const double l2 = (xi + 1.0) * xi * (xi - 1.0) / 6.0;
    return fm1 * lm1 + f0 * l0 + f1 * l1 + f2 * l2;
}

/// GOE density in the raw variable, smooth tails outside the table span.
double goe_density_at(const GoeDensityTable& t, double s) {
    if (s >= t.x_lo() && s <= t.x_hi()) {
        return std::max(0.0, table_interp(t.xs, t.density, s));
    }
    if (s > t.x_hi()) {
        // F1 ~ 1, qsq tail negligible: density ~ Ai(s)/2
        if (s > 30.0) return 0.0;
        return 0.5 * airy(s).ai;
    }
    // Left tail: q ~ sqrt(-t/2)(1 + 1/(8 t^3)); closed-form continuations of
    // the three integrals from their table values at x_lo.
    const double u_lo = -t.x_lo();
    const double u = -s;
    if (u > 40.0) return 0.0; // F1 underflows far below the table
    const double i3_lo = t.qsq_int[0];
    const double f1_lo = t.cdf[0];
    // Carry the integrals as increments from their table values at x_lo:
    // I1(s) = I1(lo) + dI1, I3(s) = I3(lo) + dI3, I2(s) = I2(lo) + int_s^lo I3.
    const double d_i1 = (std::sqrt(2.0) / 3.0) * (std::pow(u, 1.5) - std::pow(u_lo, 1.5)) -
                        (1.0 / (12.0 * std::sqrt(2.0))) * (std::pow(u, -1.5) - std::pow(u_lo, -1.5));
    const double d_i3 = (u * u - u_lo * u_lo) / 4.0 + 0.125 * (1.0 / u - 1.0 / u_lo);
    const double int_i3 = (i3_lo - u_lo * u_lo / 4.0 - 0.125 / u_lo) * (u - u_lo) +
                          (u * u * u - u_lo * u_lo * u_lo) / 12.0 + 0.125 * std::log(u / u_lo);
    const double log_f1 = std::log(f1_lo) - 0.5 * d_i1 - 0.5 * int_i3;
    const double i3 = i3_lo + d_i3;
    const double qv = std::sqrt(u / 2.0) * (1.0 - 1.0 / (8.0 * u * u * u));
    const double f1 = std::exp(log_f1);
    return f1 * 0.5 * (qv + i3);
}

} // namespace

double TwProfile::operator()(double x) const {
    if (!table_) throw InternalError("TwProfile evaluated before construction");
    const double arg = reflect_ ? -x : x;
    const double s = sigma_ * arg + table_->mean;
    return sigma_ * goe_density_at(*table_, s);
}

TwProfile normalized_goe(std::shared_ptr<const GoeDensityTable> table, bool reflect) {
    return TwProfile(std::move(table), reflect);
}

namespace {

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void save_hastings_mcleod_csv(const HastingsMcLeodTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "# hastings_mcleod x_lo=" << format_full(table.x_lo()) << " x_hi=" << format_full(table.x_hi())
        << " n=" << table.xs.size() << " residual=" << format_full(table.tolerance_achieved) << "\n";
    out << "x,q,q_prime\n";
    for (std::size_t i = 0; i < table.xs.size(); ++i)
        out << format_full(table.xs[i]) << ',' << format_full(table.q[i]) << ','
            << format_full(table.q_prime[i]) << "\n";
    if (!out) throw IoError("failed writing " + path);
}

bool load_hastings_mcleod_csv(const std::string& path, double x_lo, double x_hi, std::size_t n_points,
                              HastingsMcLeodTable& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::string header;
    std::getline(in, header);
    std::ostringstream want;
    want << "# hastings_mcleod x_lo=" << format_full(x_lo) << " x_hi=" << format_full(x_hi)
         << " n=" << n_points << " residual=";
    if (header.rfind(want.str(), 0) != 0) return false;
    double residual = 0.0;
    {
        std::istringstream rs(header.substr(want.str().size()));
        if (!(rs >> residual)) return false;
    }
    std::string line;
    std::getline(in, line); // column header
    HastingsMcLeodTable table;
    table.tolerance_achieved = residual;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double x, q, qp;
        char c1, c2;
        if (!(ls >> x >> c1 >> q >> c2 >> qp)) return false;
        table.xs.push_back(x);
        table.q.push_back(q);
        table.q_prime.push_back(qp);
    }
    if (table.xs.size() != n_points) return false;
    out = std::move(table);
    return true;
}

void save_goe_csv(const GoeDensityTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "# goe_density x_lo=" << format_full(table.x_lo()) << " x_hi=" << format_full(table.x_hi())
        << " n=" << table.xs.size() << " mean=" << format_full(table.mean)
        << " variance=" << format_full(table.variance) << "\n";
    out << "x,density,cdf,q,qsq_int\n";
    for (std::size_t i = 0; i < table.xs.size(); ++i)
        out << format_full(table.xs[i]) << ',' << format_full(table.density[i]) << ','
            << format_full(table.cdf[i]) << ',' << format_full(table.q[i]) << ','
            << format_full(table.qsq_int[i]) << "\n";
    if (!out) throw IoError("failed writing " + path);
}

bool load_goe_csv(const std::string& path, double x_lo, double x_hi, std::size_t n_points,
                  GoeDensityTable& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::string header;
    std::getline(in, header);
    std::ostringstream want;
    want << "# goe_density x_lo=" << format_full(x_lo) << " x_hi=" << format_full(x_hi) << " n=" << n_points
         << " mean=";
    if (header.rfind(want.str(), 0) != 0) return false;
    double mean = 0.0, variance = 0.0;
    {
        std::istringstream rs(header.substr(want.str().size()));
        std::string var_label;
        if (!(rs >> mean >> var_label)) return false;
        const std::string prefix = "variance=";
        if (var_label.rfind(prefix, 0) != 0) return false;
        variance = std::stod(var_label.substr(prefix.size()));
    }
    std::string line;
    std::getline(in, line);
    GoeDensityTable table;
    table.mean = mean;
    table.variance = variance;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double x, d, c, q, qi;
        char c1, c2, c3, c4;
        if (!(ls >> x >> c1 >> d >> c2 >> c >> c3 >> q >> c4 >> qi)) return false;
        table.xs.push_back(x);
        table.density.push_back(d);
        table.cdf.push_back(c);
        table.q.push_back(q);
        table.qsq_int.push_back(qi);
    }
    if (table.xs.size() != n_points) return false;
    out = std::move(table);
    return true;
}

} // namespace dlss
