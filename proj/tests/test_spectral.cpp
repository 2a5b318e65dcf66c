#include <cmath>
#include <vector>

#include "doctest.h"
#include "dlss/grid.hpp"
#include "dlss/rng.hpp"
#include "dlss/spectral.hpp"

using namespace dlss;

namespace {

constexpr double kPi = 3.14159265358979323846;

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
    return worst;
}

/// Random trigonometric polynomial with exponentially decaying coefficients.
SampledFunction random_smooth(const GridPtr& grid, Rng& rng, bool exclude_nyquist) {
    const std::size_t half = grid->size() / 2;
    std::vector<std::complex<double>> coeff(half + 1, 0.0);
    for (std::size_t k = 0; k <= half; ++k) {
        const double amp = std::exp(-0.25 * static_cast<double>(k));
        coeff[k] = std::complex<double>(amp * (2.0 * rng.uniform() - 1.0),
                                        k == 0 || k == half ? 0.0 : amp * (2.0 * rng.uniform() - 1.0));
    }
    if (exclude_nyquist) coeff[half] = 0.0;
    return from_spectrum(grid, coeff);
}

} // namespace

TEST_CASE("grid construction") {
    auto g = make_grid(kPi, 2);
    REQUIRE(g->size() == 4);
    CHECK(g->point(0) == doctest::Approx(-kPi).epsilon(1e-15));
    CHECK(g->point(1) == doctest::Approx(-kPi / 2).epsilon(1e-15));
    CHECK(g->point(2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g->point(3) == doctest::Approx(kPi / 2).epsilon(1e-15));

    auto g10 = make_grid(40.0, 10);
    CHECK(g10->size() == 1024);
    CHECK(g10->spacing() == doctest::Approx(0.078125).epsilon(1e-15));

    auto g1 = make_grid(1.0, 1);
    REQUIRE(g1->size() == 2);
    CHECK(g1->point(0) == -1.0);
    CHECK(g1->point(1) == 0.0);

    // points strictly increasing, first point exactly -l
    for (std::size_t j = 1; j < g10->size(); ++j) CHECK(g10->point(j) > g10->point(j - 1));
    CHECK(g10->point(0) == -40.0);

    CHECK_THROWS_AS(make_grid(0.0, 4), ConfigError);
    CHECK_THROWS_AS(make_grid(-1.0, 4), ConfigError);
    CHECK_THROWS_AS(make_grid(1.0, 0), ConfigError);
    CHECK_THROWS_AS(make_grid(1.0, 25), ConfigError);
}

TEST_CASE("grid wavenumbers") {
    auto g = make_grid(2.0, 3); // 8 points, k in {-3..4}
    const auto& ks = g->wavenumbers();
    CHECK(ks == std::vector<int>{0, 1, 2, 3, 4, -3, -2, -1});
}

TEST_CASE("single mode derivative") {
    const double ell = 5.0;
    auto g = make_grid(ell, 7);
    auto f = sample(g, [&](double x) { return std::sin(kPi * x / ell); });
    auto d = spectral_derivative(f, 1);
    auto expected = sample(g, [&](double x) { return (kPi / ell) * std::cos(kPi * x / ell); });
    CHECK(sup_diff(d.values, expected.values) < 1e-10);
}

TEST_CASE("constants are annihilated") {
    auto g = make_grid(3.0, 6);
    auto f = sample(g, [](double) { return 1.0; });
    for (int p = 1; p <= 4; ++p) {
        auto d = spectral_derivative(f, p);
        CHECK(sup_norm(d.values) < 1e-12);
    }
}

TEST_CASE("gaussian fourth derivative against the analytic formula") {
    auto g = make_grid(20.0, 9);
    auto f = sample(g, [](double x) { return std::exp(-x * x); });
    auto d4 = spectral_derivative(f, 4);
    auto expected = sample(g, [](double x) {
        return (16.0 * x * x * x * x - 48.0 * x * x + 12.0) * std::exp(-x * x);
    });
    CHECK(sup_diff(d4.values, expected.values) < 1e-8);
}

TEST_CASE("derivative order is contract checked") {
    auto g = make_grid(1.0, 4);
    auto f = sample(g, [](double x) { return x; });
    CHECK_THROWS_AS(spectral_derivative(f, 0), ConfigError);
    CHECK_THROWS_AS(spectral_derivative(f, 5), ConfigError);
}

TEST_CASE("elementwise maps") {
    auto g = make_grid(1.0, 1);
    SampledFunction f(g, {4.0, 9.0});
    auto r = sqrt_elementwise(f);
    CHECK(r.values[0] == doctest::Approx(2.0));
    CHECK(r.values[1] == doctest::Approx(3.0));

    SampledFunction f2(g, {-2.0, 3.0});
    auto sq = square_elementwise(f2);
    CHECK(sq.values[0] == doctest::Approx(4.0));
    CHECK(sq.values[1] == doctest::Approx(9.0));

    SampledFunction neg(g, {-1e-3, 1.0});
    try {
        sqrt_elementwise(neg);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.index() == 0);
        CHECK(e.value() == doctest::Approx(-1e-3));
    }
}

TEST_CASE("transform round trip") {
    Rng rng(12345);
    auto g = make_grid(7.0, 8);
    for (int rep = 0; rep < 5; ++rep) {
        auto f = random_smooth(g, rng, false);
        auto back = from_spectrum(g, spectrum(f));
        CHECK(sup_diff(f.values, back.values) < 1e-12);
    }
}

TEST_CASE("derivative linearity") {
    Rng rng(777);
    // moderate bandwidth keeps the kmax^4 round-off amplification below the
    // 1e-10 absolute tolerance
    auto g = make_grid(kPi, 5);
    auto f = random_smooth(g, rng, false);
    auto h = random_smooth(g, rng, false);
    const double a = 1.7, b = -0.4;
    for (int p = 1; p <= 4; ++p) {
        SampledFunction combo(g, std::vector<double>(g->size()));
        for (std::size_t j = 0; j < g->size(); ++j) combo.values[j] = a * f.values[j] + b * h.values[j];
        auto lhs = spectral_derivative(combo, p);
        auto df = spectral_derivative(f, p);
        auto dh = spectral_derivative(h, p);
        double worst = 0.0;
        for (std::size_t j = 0; j < g->size(); ++j)
            worst = std::max(worst, std::abs(lhs.values[j] - (a * df.values[j] + b * dh.values[j])));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("first derivative applied twice matches second on band-limited input") {
    Rng rng(2024);
    auto g = make_grid(kPi, 7);
    auto f = random_smooth(g, rng, true);
    auto d11 = spectral_derivative(spectral_derivative(f, 1), 1);
    auto d2 = spectral_derivative(f, 2);
    CHECK(sup_diff(d11.values, d2.values) < 1e-10);
}

TEST_CASE("nyquist mode: zeroed for odd orders, kept for even") {
    auto g = make_grid(2.0, 5);
    const std::size_t n = g->size();
    const double kappa = g->angular_wavenumber(n / 2);
    std::vector<double> alt(n);
    for (std::size_t j = 0; j < n; ++j) alt[j] = (j % 2 == 0) ? 1.0 : -1.0;
    SampledFunction f(g, alt);

    auto d1 = spectral_derivative(f, 1);
    CHECK(sup_norm(d1.values) < 1e-12);

    auto d2 = spectral_derivative(f, 2);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(d2.values[j] + kappa * kappa * alt[j]));
    CHECK(worst < 1e-9);
}

TEST_CASE("spectral accuracy beats any fixed power of the resolution") {
    // Known analytic derivatives of exp(-x^2).
    auto deriv = [](int p, double x) {
        const double e = std::exp(-x * x);
        switch (p) {
            case 1: return -2.0 * x * e;
            case 2: return (4.0 * x * x - 2.0) * e;
            case 3: return (-8.0 * x * x * x + 12.0 * x) * e;
            default: return (16.0 * x * x * x * x - 48.0 * x * x + 12.0) * e;
        }
    };
    const double ell = 18.0;
    for (int p = 1; p <= 4; ++p) {
        std::vector<double> errs;
        for (int n = 6; n <= 10; ++n) {
            auto g = make_grid(ell, n);
            auto f = sample(g, [](double x) { return std::exp(-x * x); });
            auto d = spectral_derivative(f, p);
            auto exact = sample(g, [&](double x) { return deriv(p, x); });
            errs.push_back(sup_diff(d.values, exact.values));
        }
        // One refinement takes the error from O(1e-2..1) to near round-off:
        // far faster than any modest power of 2^-n.
        CHECK(errs[1] < errs[0] * 1e-2);
        CHECK(errs[2] < 1e-7);
        CHECK(errs[3] < 1e-7);
        CHECK(errs[4] < 1e-6); // round-off floor grows with kappa^p
    }
}
