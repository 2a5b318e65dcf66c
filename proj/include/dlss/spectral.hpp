#pragma once

#include <complex>
#include <vector>

#include "dlss/grid.hpp"

namespace dlss {

/// Forward DFT of the samples, normalized by 1/N.  Bins 0..N/2 of the
/// half-complex spectrum (the input is real, so the negative-frequency
/// coefficients are the conjugates and are never stored).
std::vector<std::complex<double>> spectrum(const SampledFunction& f);

/// Inverse of spectrum(): reconstructs N real samples from N/2+1 bins.
SampledFunction from_spectrum(const GridPtr& grid, const std::vector<std::complex<double>>& half_spectrum);

/// p-th derivative of the trigonometric interpolant of f, 1 <= p <= 4.
/// For odd p the Nyquist coefficient is zeroed (its derivative is otherwise
/// ill-defined for the real interpolant); for even p it is kept with the real
/// multiplier (-1)^(p/2) k^p.
SampledFunction spectral_derivative(const SampledFunction& f, int p);

/// Derivatives of orders 2, 3 and 4 of f in one forward transform.  This is
/// the inner kernel of the solver right-hand side.
void spectral_derivatives_234(const SampledFunction& f, std::vector<double>& d2, std::vector<double>& d3,
                              std::vector<double>& d4);

/// First derivative into a caller-provided buffer (Fisher information path).
void spectral_derivative_1(const SampledFunction& f, std::vector<double>& d1);

} // namespace dlss
