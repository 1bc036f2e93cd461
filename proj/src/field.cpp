#include "nonlocal/field.hpp"

#include <cmath>
#include <stdexcept>

namespace nonlocal {

Field::Field(GridPtr grid, bool compact_support)
    : grid_(std::move(grid)), compact_support_(compact_support) {
    if (!grid_) throw std::invalid_argument("field requires a grid");
    values_.assign(grid_->size(), 0.0);
}

Field::Field(GridPtr grid, std::vector<double> values, bool compact_support)
    : grid_(std::move(grid)), values_(std::move(values)), compact_support_(compact_support) {
    if (!grid_) throw std::invalid_argument("field requires a grid");
    if (values_.size() != grid_->size()) {
        throw std::invalid_argument("field length does not match grid size");
    }
}

Field Field::sample(GridPtr grid, const std::function<double(double)>& f, bool compact_support) {
    Field out(grid, compact_support);
    auto& vals = out.values_;
    const auto x = grid->points();
    for (std::size_t j = 0; j < vals.size(); ++j) {
        if (compact_support && !grid->in_support(x[j])) continue;
        vals[j] = f(x[j]);
    }
    return out;
}

Field Field::from_spectrum(GridPtr grid, std::span<const std::complex<double>> coeffs,
                           bool compact_support) {
    const std::size_t n = grid->size();
    return Field(grid, fft::inverse(coeffs, n), compact_support);
}

const fft::Spectrum& Field::spectrum() const {
    if (!spectrum_) spectrum_ = fft::forward(values_);
    return *spectrum_;
}

double Field::max_abs() const {
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
}

bool Field::all_finite() const {
    for (double x : values_) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

bool Field::same_grid(const Field& other) const {
    if (grid_ == other.grid_) return true;
    return grid_ && other.grid_ && *grid_ == *other.grid_;
}

}  // namespace nonlocal
