#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "dlss/errors.hpp"

namespace dlss {

/// Uniform periodic grid on [-half_width, half_width) with 2^exponent points.
///
/// Point j sits at x_j = -l + 2*l*j/2^n, so the first sample is exactly -l and
/// the (virtual) point at +l wraps around to -l.  The wavenumber table is in
/// FFT storage order, k in {-2^(n-1)+1, ..., 2^(n-1)}; the spectral derivative
/// multiplier for order p is (i*k*pi/l)^p.
class Grid {
public:
    Grid(double half_width, int exponent);

    double half_width() const noexcept { return half_width_; }
    int exponent() const noexcept { return exponent_; }
    std::size_t size() const noexcept { return points_.size(); }
    double spacing() const noexcept { return spacing_; }

    const std::vector<double>& points() const noexcept { return points_; }
    const std::vector<int>& wavenumbers() const noexcept { return wavenumbers_; }
    double point(std::size_t j) const { return points_[j]; }

    /// k*pi/l for FFT bin index m (m in [0, 2^n/2] for the half spectrum).
    double angular_wavenumber(std::size_t m) const { return wavenumbers_[m] * wavenumber_scale_; }

    bool operator==(const Grid& other) const noexcept {
        return half_width_ == other.half_width_ && exponent_ == other.exponent_;
    }

private:
    double half_width_;
    int exponent_;
    double spacing_;
    double wavenumber_scale_; // pi / half_width
    std::vector<double> points_;
    std::vector<int> wavenumbers_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a shareable immutable grid. l > 0, 1 <= n <= 24.
GridPtr make_grid(double half_width, int exponent);

/// Real-valued samples on a grid.
struct SampledFunction {
    GridPtr grid;
    std::vector<double> values;

    SampledFunction() = default;
    SampledFunction(GridPtr g, std::vector<double> v);

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t j) const { return values[j]; }
    double& operator[](std::size_t j) { return values[j]; }
};

/// Samples a callable on every grid point.
template <typename F>
SampledFunction sample(const GridPtr& grid, F&& f) {
    std::vector<double> v(grid->size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid->point(j));
    return SampledFunction(grid, std::move(v));
}

/// Pointwise application of `map`. The map may throw DomainError; helpers
/// below do so for the common cases.
template <typename F>
SampledFunction elementwise(F&& map, const SampledFunction& f) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = map(f.values[j], j);
    return SampledFunction(f.grid, std::move(out));
}

/// Pointwise square root; throws DomainError on any negative input.
SampledFunction sqrt_elementwise(const SampledFunction& f);

/// Pointwise square.
SampledFunction square_elementwise(const SampledFunction& f);

/// max |f_j|
double sup_norm(const std::vector<double>& values);

/// true if every entry is finite
bool all_finite(const std::vector<double>& values);

} // namespace dlss
