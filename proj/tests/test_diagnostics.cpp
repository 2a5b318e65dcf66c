#include <cmath>
#include <vector>

#include "doctest.h"
#include "dlss/diagnostics.hpp"
#include "dlss/rng.hpp"
#include "dlss/solver.hpp"

using namespace dlss;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286;

double gaussian_w0(double x) { return std::pow(2.0 * kPi, -0.25) * std::exp(-x * x / 4.0); }
double std_normal(double x) { return std::exp(-x * x / 2.0) / std::sqrt(2.0 * kPi); }

} // namespace

TEST_CASE("trapezoid moments of the quarter-power gaussian") {
    auto g = make_grid(40.0, 10);
    auto w = sample(g, gaussian_w0);
    auto m = trapezoid_moments(w);
    const double a_exact = 2.0 * std::sqrt(kPi) / std::pow(2.0 * kPi, 0.25);
    CHECK(std::abs(m.a - a_exact) < 1e-10);
    CHECK(std::abs(m.a - 2.23903) < 1e-5);
    CHECK(std::abs(m.b) < 1e-10);
    CHECK(std::abs(m.c - 2.0) < 1e-10);
}

TEST_CASE("moments of a shifted unit-mass hat") {
    auto g = make_grid(40.0, 10);
    const double dx = g->spacing();
    const double half_width = 16.0 * dx; // hat nodes aligned with the grid
    auto w = sample(g, [&](double x) {
        const double u = std::abs(x - 3.0) / half_width;
        return u >= 1.0 ? 0.0 : (1.0 - u) / half_width;
    });
    auto m = trapezoid_moments(w);
    CHECK(std::abs(m.a - 1.0) < 1e-12);
    CHECK(std::abs(m.b - 3.0) < 1e-12);
}

TEST_CASE("gumbel density moments") {
    auto g = make_grid(40.0, 10);
    auto w = sample(g, [](double x) { return std::exp(-x - std::exp(-x)); });
    auto m = trapezoid_moments(w);
    CHECK(std::abs(m.a - 1.0) < 1e-8);
    CHECK(std::abs(m.b - kEulerGamma) < 1e-8);
    CHECK(std::abs(m.variance() - kPi * kPi / 6.0) < 1e-7);
}

TEST_CASE("degenerate mass is rejected") {
    auto g = make_grid(1.0, 4);
    auto w = sample(g, [](double) { return 0.0; });
    CHECK_THROWS_AS(trapezoid_moments(w), Error);
}

TEST_CASE("normalize_density fixes the standard gaussian") {
    auto g = make_grid(40.0, 10);
    auto w = sample(g, std_normal);
    auto nd = normalize_density(w, g);
    double worst = 0.0;
    for (std::size_t j = 0; j < g->size(); ++j)
        worst = std::max(worst, std::abs(nd.values[j] - w.values[j]));
    CHECK(worst < 1e-8);
}

TEST_CASE("normalize_density rescales gaussians to the standard one") {
    auto g = make_grid(40.0, 10);
    auto target = make_grid(10.0, 9);

    auto w = sample(g, gaussian_w0);
    auto nd = normalize_density(w, target);
    CHECK(sup_distance(nd, std_normal) < 1e-6);

    auto w59 = sample(g, [](double x) { return std::exp(-(x - 5.0) * (x - 5.0) / 18.0) / std::sqrt(18.0 * kPi); });
    auto nd59 = normalize_density(w59, target);
    CHECK(sup_distance(nd59, std_normal) < 1e-6);
}

TEST_CASE("normalized output has mean zero and unit variance") {
    Rng rng(99);
    auto g = make_grid(40.0, 10);
    auto target = make_grid(12.0, 10);
    for (int rep = 0; rep < 4; ++rep) {
        // random positive two-bump profile
        const double c1 = -6.0 + 4.0 * rng.uniform();
        const double c2 = 2.0 + 4.0 * rng.uniform();
        const double a2 = 0.3 + rng.uniform();
        auto w = sample(g, [&](double x) {
            return std::exp(-(x - c1) * (x - c1) / 6.0) + a2 * std::exp(-(x - c2) * (x - c2) / 3.0);
        });
        auto nd = normalize_density(w, target);
        auto m = trapezoid_moments(nd);
        CHECK(std::abs(m.a - 1.0) < 1e-4);
        CHECK(std::abs(m.b) < 1e-6);
        CHECK(std::abs(m.variance() - 1.0) < 1e-4);
    }
}

TEST_CASE("normalize_density reflect flag mirrors the profile") {
    auto g = make_grid(40.0, 10);
    auto target = make_grid(10.0, 9);
    auto w = sample(g, [](double x) { return std::exp(-x - std::exp(-x)); });
    auto nd = normalize_density(w, target, false);
    auto ndr = normalize_density(w, target, true);
    const std::size_t n = target->size();
    // x_j = -l + j dx mirrors onto index n - j (x = +l wraps to -l, skip j = 0)
    double worst = 0.0;
    for (std::size_t j = 1; j < n; ++j)
        worst = std::max(worst, std::abs(ndr.values[j] - nd.values[n - j]));
    CHECK(worst < 1e-12);
}

TEST_CASE("fisher information of gaussians and constants") {
    auto g = make_grid(40.0, 10);
    auto w = sample(g, gaussian_w0);
    // analytic value a / sigma^2 with a = 2 sqrt(pi) (2 pi)^(-1/4), sigma^2 = 2
    const double exact = std::sqrt(kPi) / std::pow(2.0 * kPi, 0.25);
    CHECK(std::abs(fisher_information(w) - exact) < 1e-8);
    CHECK(fisher_information(w) == doctest::Approx(1.11954).epsilon(1e-4));

    auto c = sample(g, [](double) { return 2.0; });
    CHECK(fisher_information(c) < 1e-12);

    auto std_g = sample(g, std_normal);
    CHECK(std::abs(fisher_information(std_g) - 1.0) < 1e-6);
}

TEST_CASE("fisher information is translation invariant and scales linearly") {
    auto g = make_grid(40.0, 10);
    auto w = sample(g, [](double x) { return std::exp(-x - std::exp(-x)); });
    const double base = fisher_information(w);

    auto shifted = sample(g, [](double x) { return std::exp(-(x - 5.0) - std::exp(-(x - 5.0))); });
    CHECK(std::abs(fisher_information(shifted) - base) / base < 1e-8);

    SampledFunction scaled(g, w.values);
    for (double& v : scaled.values) v *= 3.0;
    CHECK(std::abs(fisher_information(scaled) - 3.0 * base) / (3.0 * base) < 1e-8);
}

TEST_CASE("power law fit recovers exact and noisy exponents") {
    std::vector<double> ts, ys;
    for (int i = 1; i <= 200; ++i) {
        const double t = 10.0 * i;
        ts.push_back(t);
        ys.push_back(2.0 * std::sqrt(t));
    }
    auto fit = power_law_fit(ts, ys, 100.0);
    CHECK(fit.amplitude == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);

    Rng rng(4242);
    for (double planted : {0.33, -0.66, 1.5}) {
        std::vector<double> ys2;
        for (double t : ts) ys2.push_back(1.3 * std::pow(t, planted) * (1.0 + 0.01 * (2.0 * rng.uniform() - 1.0)));
        auto f2 = power_law_fit(ts, ys2, 100.0);
        CHECK(std::abs(f2.exponent - planted) < 0.02);
    }

    CHECK_THROWS_AS(power_law_fit(ts, ys, 1.0e4), ConfigError);
}

TEST_CASE("sup distance vanishes on exact samples") {
    auto g = make_grid(10.0, 8);
    auto f = sample(g, std_normal);
    CHECK(sup_distance(f, std_normal) == 0.0);
}

TEST_CASE("lyapunov report on short runs") {
    auto g = make_grid(128.0, 9);
    auto w0 = sample(g, gaussian_w0);
    SolveOptions opt;
    opt.diag_stride = 40;

    SUBCASE("unbiased dissipative run: mass flat, fisher decreasing") {
        SolverParams p;
        p.mu = 0.0;
        p.C = 0.2;
        p.eps = 0.1;
        p.h = 0.0025;
        p.t_max = 2.0;
        auto res = solve(w0, p, opt);
        REQUIRE(res.reached_t_max);
        auto rep = lyapunov_report(res.trajectory.diagnostics, p.K(), p.L());
        CHECK(rep.mass_max_drift < 1e-10);
        CHECK(rep.checked_monotonicity);
        CHECK(rep.fisher_nonincreasing.ok);
        CHECK(rep.momentum_nondecreasing.ok);
        // strict decrease of fisher on this run
        const auto& d = res.trajectory.diagnostics;
        for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i].fisher < d[i - 1].fisher);
    }

    SUBCASE("biased run: mean drifts with the sign of K") {
        SolverParams p;
        p.mu = 1.0;
        p.C = 0.2;
        p.eps = 0.1;
        p.h = 0.0025;
        p.t_max = 3.0;
        auto res = solve(w0, p, opt);
        REQUIRE(res.reached_t_max);
        auto rep = lyapunov_report(res.trajectory.diagnostics, p.K(), p.L());
        CHECK(rep.checked_mean_sign);
        CHECK(rep.mean_drift_sign.ok);
        const auto& d = res.trajectory.diagnostics;
        CHECK(d.back().b > d.front().b);
    }

    SUBCASE("K = L = 0 run: all functionals constant") {
        SolverParams p;
        p.mu = 0.0;
        p.C = 0.25;
        p.eps = 0.0;
        p.h = 0.0025;
        p.t_max = 1.0;
        auto res = solve(w0, p, opt);
        REQUIRE(res.reached_t_max);
        const auto& d = res.trajectory.diagnostics;
        for (const auto& r : d) {
            CHECK(std::abs(r.a - d.front().a) < 1e-12);
            CHECK(std::abs(r.momentum - d.front().momentum) < 1e-12);
            CHECK(std::abs(r.fisher - d.front().fisher) < 1e-12);
            CHECK(std::abs(r.b - d.front().b) < 1e-12);
        }
        auto rep = lyapunov_report(d, p.K(), p.L());
        CHECK(rep.mass_max_drift < 1e-12);
        CHECK(!rep.checked_monotonicity);
        CHECK(!rep.checked_mean_sign);
    }
}
