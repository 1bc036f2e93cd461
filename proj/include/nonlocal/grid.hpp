#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace nonlocal {

enum class GridKind { Periodic, Line };

std::string to_string(GridKind kind);
GridKind grid_kind_from_string(const std::string& name);

/// Description of a uniform 1D grid, validated by make_grid().
///
/// Periodic grids cover [x_lo, x_lo + period) with n a power of two.
/// Line grids cover [x_lo, x_hi) and carry a marked support interval
/// [support_lo, support_hi] strictly inside the domain; compactly supported
/// data (u in the inviscid system) lives there.
struct GridSpec {
    GridKind kind = GridKind::Periodic;
    std::size_t n = 0;
    double x_lo = 0.0;
    double x_hi = 1.0;  // periodic: x_lo + period
    double support_lo = 0.0;
    double support_hi = 0.0;

    static GridSpec periodic(std::size_t n, double period = 1.0, double x_lo = 0.0);
    static GridSpec line(std::size_t n, double x_lo, double x_hi, double support_lo,
                         double support_hi);
};

class Grid {
public:
    GridKind kind() const { return spec_.kind; }
    bool periodic() const { return spec_.kind == GridKind::Periodic; }
    std::size_t size() const { return points_.size(); }
    double spacing() const { return h_; }
    double x_lo() const { return spec_.x_lo; }
    double x_hi() const { return spec_.x_hi; }
    double extent() const { return spec_.x_hi - spec_.x_lo; }
    /// Period of a periodic grid (equal to extent()).
    double period() const { return extent(); }
    double support_lo() const { return spec_.support_lo; }
    double support_hi() const { return spec_.support_hi; }
    bool in_support(double x) const { return x >= spec_.support_lo && x <= spec_.support_hi; }

    std::span<const double> points() const { return points_; }
    double point(std::size_t j) const { return points_[j]; }
    const GridSpec& spec() const { return spec_; }

    /// Angular wavenumber 2*pi*m/period of the m-th r2c coefficient.
    double wavenumber(std::size_t m) const;

    bool operator==(const Grid& other) const;

private:
    friend std::shared_ptr<const Grid> make_grid(const GridSpec& spec);
    Grid(const GridSpec& spec, std::vector<double> points, double h);

    GridSpec spec_;
    std::vector<double> points_;
    double h_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validates the spec and materializes grid points x_j = x_lo + j*h, h = extent/n.
/// Throws std::invalid_argument on n < 8, a non-power-of-two periodic size,
/// an empty domain, or a support interval not strictly inside a line domain.
GridPtr make_grid(const GridSpec& spec);

}  // namespace nonlocal
