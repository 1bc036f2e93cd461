#pragma once

#include <functional>
#include <string>

#include "nonlocal/field.hpp"

namespace nonlocal {

/// Hilbert transform Hf = (1/pi) P.V. int f(y)/(x-y) dy (line) or its
/// periodic counterpart with the cotangent kernel; Fourier symbol -i sgn(k).

/// Spectral Hilbert transform on a periodic grid. The mean and the Nyquist
/// mode are mapped to zero. Throws std::invalid_argument on a Line grid.
Field hilbert_periodic(const Field& f);

/// Alternating trapezoidal rule on a Line grid,
///   (Hf)_i = (1/pi) sum_{(j-i) odd} f_j / (x_i - x_j) * 2h,
/// evaluated as a zero-padded FFT convolution. Spectrally accurate for
/// smooth data that vanishes near the domain ends. Throws on periodic grids.
Field hilbert_alternating_trapezoidal(const Field& f);

/// Dispatches on the grid kind.
Field hilbert(const Field& f);

/// Test function phi used by the weighted bilinear identities.
class TestWeight {
public:
    enum class Kind { ShiftedLinear, ReflectedLinear, Lipschitz };

    /// phi(x) = x - a.
    static TestWeight shifted_linear(double a);
    /// phi(x) = b - x.
    static TestWeight reflected_linear(double b);
    /// Arbitrary Lipschitz phi. On periodic grids it must share the grid period.
    static TestWeight lipschitz(std::function<double(double)> phi, double lipschitz_constant,
                                std::string description);

    Kind kind() const { return kind_; }
    const std::string& description() const { return description_; }
    double lipschitz_constant() const { return lipschitz_; }

    double operator()(double x) const;
    /// Limit of (phi(x) - phi(y))/(x - y) as y -> x; a centered difference
    /// of order eight with step h for the Lipschitz kind.
    double diagonal_slope(double x, double h) const;

    /// Throws std::invalid_argument if a Lipschitz weight is not periodic on
    /// a periodic grid (checked at grid points to 1e-12).
    void validate_on(const Grid& grid) const;

private:
    TestWeight(Kind kind, double anchor, std::function<double(double)> phi, double lipschitz,
               std::string description);

    Kind kind_;
    double anchor_ = 0.0;
    std::function<double(double)> phi_;
    double lipschitz_ = 1.0;
    std::string description_;
};

/// int phi f Hf dx using the grid's Hilbert operator and quadrature.
double weighted_bilinear_lhs(const Field& f, const TestWeight& phi);

/// Direct O(n^2) double sum of the symmetrized form
///   line:     (1/2pi) sum_ij (phi_i - phi_j)/(x_i - x_j) f_i f_j h^2
///   periodic: (1/2P)  sum_ij (phi_i - phi_j) cot(pi (x_i - x_j)/P) f_i f_j h^2
/// with the diagonal replaced by its limit. Reference path, not for production sizes.
double weighted_bilinear_rhs(const Field& f, const TestWeight& phi);

}  // namespace nonlocal
