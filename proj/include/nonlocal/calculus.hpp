#pragma once

#include <span>

#include "nonlocal/field.hpp"

namespace nonlocal {

/// f_x by multiplication with i*k; the Nyquist mode is zeroed.
/// Throws std::invalid_argument on a Line grid.
Field spectral_derivative(const Field& f);

/// f_xx by multiplication with -k^2 (periodic only).
Field spectral_second_derivative(const Field& f);

/// Fourth-order centered differences with one-sided fourth-order stencils at
/// the two outermost points on each end. Intended for Line grids.
Field fd4_derivative(const Field& f);

/// Spectral derivative on periodic grids, fourth-order differences on lines.
Field derivative(const Field& f);

/// Quadrature of sampled values: rectangle rule on periodic grids (spectrally
/// accurate), trapezoidal rule on line grids.
double integrate(const Grid& grid, std::span<const double> values);
double integrate(const Field& f);

double l2_norm(const Field& f);

/// sup |f| of the resolved function: the discrete maximum refined by the
/// degree-6 interpolant through the seven samples around it. Never smaller
/// than the grid maximum; falls back to it next to a line-grid boundary.
double peak_abs(const Field& f);
/// sqrt(||f||^2 + ||f_x||^2).
double h1_norm(const Field& f);

}  // namespace nonlocal
