#include "nonlocal/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nonlocal {

std::string to_string(GridKind kind) {
    return kind == GridKind::Periodic ? "periodic" : "line";
}

GridKind grid_kind_from_string(const std::string& name) {
    if (name == "periodic") return GridKind::Periodic;
    if (name == "line") return GridKind::Line;
    throw std::invalid_argument("unknown grid kind '" + name + "'");
}

GridSpec GridSpec::periodic(std::size_t n, double period, double x_lo) {
    GridSpec s;
    s.kind = GridKind::Periodic;
    s.n = n;
    s.x_lo = x_lo;
    s.x_hi = x_lo + period;
    s.support_lo = x_lo;
    s.support_hi = x_lo + period;
    return s;
}

GridSpec GridSpec::line(std::size_t n, double x_lo, double x_hi, double support_lo,
                        double support_hi) {
    GridSpec s;
    s.kind = GridKind::Line;
    s.n = n;
    s.x_lo = x_lo;
    s.x_hi = x_hi;
    s.support_lo = support_lo;
    s.support_hi = support_hi;
    return s;
}

Grid::Grid(const GridSpec& spec, std::vector<double> points, double h)
    : spec_(spec), points_(std::move(points)), h_(h) {}

double Grid::wavenumber(std::size_t m) const {
    return 2.0 * std::numbers::pi * static_cast<double>(m) / period();
}

bool Grid::operator==(const Grid& other) const {
    return spec_.kind == other.spec_.kind && spec_.n == other.spec_.n &&
           spec_.x_lo == other.spec_.x_lo && spec_.x_hi == other.spec_.x_hi &&
           spec_.support_lo == other.spec_.support_lo &&
           spec_.support_hi == other.spec_.support_hi;
}

GridPtr make_grid(const GridSpec& spec) {
    if (spec.n < 8) {
        throw std::invalid_argument("grid needs at least 8 points");
    }
    if (!(spec.x_hi > spec.x_lo) || !std::isfinite(spec.x_lo) || !std::isfinite(spec.x_hi)) {
        throw std::invalid_argument("grid domain must be a finite, nonempty interval");
    }
    if (spec.kind == GridKind::Periodic) {
        if ((spec.n & (spec.n - 1)) != 0) {
            throw std::invalid_argument("periodic grid size must be a power of two, got " +
                                        std::to_string(spec.n));
        }
    } else {
        if (!(spec.support_lo > spec.x_lo && spec.support_hi < spec.x_hi &&
              spec.support_lo < spec.support_hi)) {
            throw std::invalid_argument("line grid support must lie strictly inside the domain");
        }
    }
    const double h = (spec.x_hi - spec.x_lo) / static_cast<double>(spec.n);
    std::vector<double> points(spec.n);
    for (std::size_t j = 0; j < spec.n; ++j) {
        points[j] = spec.x_lo + static_cast<double>(j) * h;
    }
    return GridPtr(new Grid(spec, std::move(points), h));
}

}  // namespace nonlocal
