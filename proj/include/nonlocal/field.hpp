#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nonlocal/fft.hpp"
#include "nonlocal/grid.hpp"

namespace nonlocal {

/// Real grid function with a lazily computed DFT companion.
///
/// The spectrum is cached on first request and dropped whenever the values
/// are handed out for mutation. A compact-support tag marks data that must
/// vanish outside the grid's support interval (Line grids).
class Field {
public:
    Field() = default;
    explicit Field(GridPtr grid, bool compact_support = false);
    Field(GridPtr grid, std::vector<double> values, bool compact_support = false);

    /// Samples f at every grid point.
    static Field sample(GridPtr grid, const std::function<double(double)>& f,
                        bool compact_support = false);
    /// Builds a field from r2c coefficients (length n/2 + 1).
    static Field from_spectrum(GridPtr grid, std::span<const std::complex<double>> coeffs,
                               bool compact_support = false);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    std::span<const double> values() const { return values_; }
    /// Mutable access; invalidates the cached spectrum.
    std::vector<double>& values_mut() {
        spectrum_.reset();
        return values_;
    }
    double operator[](std::size_t j) const { return values_[j]; }

    const fft::Spectrum& spectrum() const;
    bool has_cached_spectrum() const { return spectrum_.has_value(); }

    bool compact_support() const { return compact_support_; }
    void set_compact_support(bool tag) { compact_support_ = tag; }

    double max_abs() const;
    bool all_finite() const;
    bool same_grid(const Field& other) const;

private:
    GridPtr grid_;
    std::vector<double> values_;
    bool compact_support_ = false;
    mutable std::optional<fft::Spectrum> spectrum_;
};

/// Time-dependent pair (u, v) of the nonlocal system.
struct SolutionState {
    Field u;
    Field v;
    double t = 0.0;
    std::size_t step = 0;
};

}  // namespace nonlocal
