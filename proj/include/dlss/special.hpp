#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dlss/errors.hpp"

namespace dlss {

struct AiryValues {
    double ai;
    double bi;
    double ai_prime;
    double bi_prime;
};

/// Airy functions of the first and second kind, |x| <= 30.
AiryValues airy(double x);

/// Tabulated Hastings-McLeod solution of q'' = x q + 2 q^3 on [x_lo, x_hi]:
/// the unique positive solution with q ~ Ai on the right and
/// q ~ sqrt(-x/2) (1 + 1/(8 x^3)) on the left.
struct HastingsMcLeodTable {
    std::vector<double> xs;      ///< ascending, uniform
    std::vector<double> q;
    std::vector<double> q_prime;
    double tolerance_achieved = 0.0; ///< max interior ODE residual (6th-order check)

    double spacing() const { return xs[1] - xs[0]; }
    double x_lo() const { return xs.front(); }
    double x_hi() const { return xs.back(); }
};

/// Solves the boundary-value problem by damped Newton iteration on a
/// second-order finite-difference discretization, Richardson-extrapolated
/// against a half-spacing solve.  Requires x_lo <= -8, x_hi >= 8,
/// n_points >= 201 and odd.
HastingsMcLeodTable hastings_mcleod(double x_lo = -10.0, double x_hi = 10.0, std::size_t n_points = 4001);

/// Largest-eigenvalue (GOE, beta = 1) distribution derived from the
/// Hastings-McLeod table:
///   F1(s) = exp(-1/2 int_s^inf q - 1/2 int_s^inf (t-s) q(t)^2 dt),
///   F1'(s) = F1(s) (q(s)/2 + 1/2 int_s^inf q^2 dt).
struct GoeDensityTable {
    std::vector<double> xs;
    std::vector<double> density;  ///< F1'
    std::vector<double> cdf;      ///< F1
    std::vector<double> q;        ///< copy of the HM values (tail evaluation)
    std::vector<double> qsq_int;  ///< int_s^inf q^2 dt at the table nodes
    double mean = 0.0;
    double variance = 0.0;

    double x_lo() const { return xs.front(); }
    double x_hi() const { return xs.back(); }
};

GoeDensityTable goe_density(const HastingsMcLeodTable& table);

/// The comparison profile f1: the GOE density normalized to mean zero and
/// variance one, optionally reflected across x = 0.  Evaluates smoothly on
/// all of R (asymptotic closed forms outside the table span).
class TwProfile {
public:
    TwProfile() = default;
    TwProfile(std::shared_ptr<const GoeDensityTable> table, bool reflect);

    double operator()(double x) const;
    bool reflected() const { return reflect_; }
    double table_mean() const { return table_->mean; }
    double table_sigma() const { return sigma_; }

private:
    std::shared_ptr<const GoeDensityTable> table_;
    double sigma_ = 1.0;
    bool reflect_ = false;
};

TwProfile normalized_goe(std::shared_ptr<const GoeDensityTable> table, bool reflect = false);

/// CSV cache for the two tables.  Files carry a header line recording span,
/// resolution and achieved residual; a load whose parameters do not match is
/// rejected so the caller regenerates.
void save_hastings_mcleod_csv(const HastingsMcLeodTable& table, const std::string& path);
bool load_hastings_mcleod_csv(const std::string& path, double x_lo, double x_hi, std::size_t n_points,
                              HastingsMcLeodTable& out);
void save_goe_csv(const GoeDensityTable& table, const std::string& path);
bool load_goe_csv(const std::string& path, double x_lo, double x_hi, std::size_t n_points,
                  GoeDensityTable& out);

} // namespace dlss
