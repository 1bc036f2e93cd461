#include "nonlocal/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nonlocal {

Field spectral_derivative(const Field& f) {
    const Grid& g = f.grid();
    if (!g.periodic()) {
        throw std::invalid_argument("spectral derivative requires a periodic grid");
    }
    const std::size_t n = g.size();
    fft::Spectrum c = f.spectrum();
    for (std::size_t m = 0; m < c.size(); ++m) {
        c[m] *= std::complex<double>(0.0, g.wavenumber(m));
    }
    c[n / 2] = 0.0;
    return Field::from_spectrum(f.grid_ptr(), c);
}

Field spectral_second_derivative(const Field& f) {
    const Grid& g = f.grid();
    if (!g.periodic()) {
        throw std::invalid_argument("spectral derivative requires a periodic grid");
    }
    fft::Spectrum c = f.spectrum();
    for (std::size_t m = 0; m < c.size(); ++m) {
        const double k = g.wavenumber(m);
        c[m] *= -k * k;
    }
    return Field::from_spectrum(f.grid_ptr(), c);
}

Field fd4_derivative(const Field& f) {
    const std::size_t n = f.size();
    const double h = f.grid().spacing();
    const auto y = f.values();
    std::vector<double> d(n, 0.0);
    const double inv12h = 1.0 / (12.0 * h);
    for (std::size_t j = 2; j + 2 < n; ++j) {
        d[j] = (y[j - 2] - 8.0 * y[j - 1] + 8.0 * y[j + 1] - y[j + 2]) * inv12h;
    }
    // Forward/backward fourth-order stencils at the ends.
    d[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) * inv12h;
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) * inv12h;
    d[n - 1] = (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] +
                3.0 * y[n - 5]) * inv12h;
    d[n - 2] = (3.0 * y[n - 1] + 10.0 * y[n - 2] - 18.0 * y[n - 3] + 6.0 * y[n - 4] -
                y[n - 5]) * inv12h;
    return Field(f.grid_ptr(), std::move(d));
}

Field derivative(const Field& f) {
    return f.grid().periodic() ? spectral_derivative(f) : fd4_derivative(f);
}

double integrate(const Grid& grid, std::span<const double> values) {
    double sum = 0.0;
    for (double x : values) sum += x;
    if (!grid.periodic() && !values.empty()) {
        sum -= 0.5 * (values.front() + values.back());
    }
    return sum * grid.spacing();
}

double integrate(const Field& f) { return integrate(f.grid(), f.values()); }

double l2_norm(const Field& f) {
    std::vector<double> sq(f.size());
    const auto y = f.values();
    for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = y[j] * y[j];
    return std::sqrt(integrate(f.grid(), sq));
}

double h1_norm(const Field& f) {
    const double l2 = l2_norm(f);
    const double d = l2_norm(derivative(f));
    return std::sqrt(l2 * l2 + d * d);
}

double peak_abs(const Field& f) {
    const auto v = f.values();
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    std::size_t imax = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (std::abs(v[j]) > std::abs(v[imax])) imax = j;
    }
    const double top = std::abs(v[imax]);
    const bool periodic = f.grid().periodic();
    if (top == 0.0 || n < 7 || (!periodic && (imax < 3 || imax + 3 >= n))) return top;

    const double sign = v[imax] < 0.0 ? -1.0 : 1.0;
    double y[7];
    for (int k = -3; k <= 3; ++k) {
        const std::size_t j = periodic ? (imax + n + k) % n : imax + k;
        y[k + 3] = sign * v[j];
    }
    // Lagrange form on the nodes -3..3.
    auto p = [&](double s) {
        double sum = 0.0;
        for (int a = 0; a < 7; ++a) {
            double w = 1.0;
            for (int b = 0; b < 7; ++b) {
                if (b != a) w *= (s - (b - 3)) / static_cast<double>(a - b);
            }
            sum += w * y[a];
        }
        return sum;
    };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = -1.0, hi = 1.0;
    double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
    double pc = p(c), pd = p(d);
    for (int it = 0; it < 50; ++it) {
        if (pc > pd) {
            hi = d;
            d = c;
            pd = pc;
            c = hi - g * (hi - lo);
            pc = p(c);
        } else {
            lo = c;
            c = d;
            pc = pd;
            d = lo + g * (hi - lo);
            pd = p(d);
        }
    }
    return std::max(top, p(0.5 * (lo + hi)));
}

}  // namespace nonlocal
