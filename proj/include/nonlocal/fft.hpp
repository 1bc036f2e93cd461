#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nonlocal::fft {

using Spectrum = std::vector<std::complex<double>>;

/// Unnormalized real-to-complex DFT; returns n/2 + 1 coefficients
/// c_m = sum_j f_j exp(-2 pi i j m / n).
Spectrum forward(std::span<const double> values);

/// Inverse of forward(), including the 1/n factor.
std::vector<double> inverse(std::span<const std::complex<double>> coeffs, std::size_t n);

}  // namespace nonlocal::fft
