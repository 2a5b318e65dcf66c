#include "dlss/grid.hpp"

#include <cmath>
#include <limits>

namespace dlss {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Grid::Grid(double half_width, int exponent) : half_width_(half_width), exponent_(exponent) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw ConfigError("grid half-width must be positive and finite");
    if (exponent < 1 || exponent > 24)
        throw ConfigError("grid exponent must be in [1, 24]");

    const std::size_t n = std::size_t{1} << exponent;
    spacing_ = 2.0 * half_width / static_cast<double>(n);
    wavenumber_scale_ = kPi / half_width;

    points_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        // 2j/n is an exact dyadic rational, so point 0 is exactly -l.
        points_[j] = -half_width + half_width * (2.0 * static_cast<double>(j) / static_cast<double>(n));
    }

    wavenumbers_.resize(n);
    const int half = static_cast<int>(n) / 2;
    for (std::size_t m = 0; m < n; ++m) {
        const int k = static_cast<int>(m);
        wavenumbers_[m] = (k <= half) ? k : k - static_cast<int>(n);
    }
}

GridPtr make_grid(double half_width, int exponent) {
    return std::make_shared<const Grid>(half_width, exponent);
}

SampledFunction::SampledFunction(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw InternalError("SampledFunction requires a grid");
    if (values.size() != grid->size())
        throw InternalError("SampledFunction size mismatch: " + std::to_string(values.size()) +
                            " values on a " + std::to_string(grid->size()) + "-point grid");
}

SampledFunction sqrt_elementwise(const SampledFunction& f) {
    return elementwise(
        [](double x, std::size_t j) {
            if (x < 0.0) throw DomainError("sqrt of negative value", j, x);
            return std::sqrt(x);
        },
        f);
}

SampledFunction square_elementwise(const SampledFunction& f) {
    return elementwise([](double x, std::size_t) { return x * x; }, f);
}

double sup_norm(const std::vector<double>& values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(const std::vector<double>& values) {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace dlss
