#include "nonlocal/hilbert.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "nonlocal/calculus.hpp"

namespace nonlocal {
namespace {

constexpr double pi = std::numbers::pi;

// Spectrum of the alternating kernel K_m = 2/(pi m), m odd, laid out for a
// circular convolution of length 2n. It depends only on n.
const fft::Spectrum& alternating_kernel_spectrum(std::size_t n) {
    static std::map<std::size_t, fft::Spectrum> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const std::size_t padded = 2 * n;
    std::vector<double> kernel(padded, 0.0);
    for (std::size_t m = 1; m < n; m += 2) {
        const double k = 2.0 / (pi * static_cast<double>(m));
        kernel[m] = k;
        kernel[padded - m] = -k;
    }
    return cache.emplace(n, fft::forward(kernel)).first->second;
}

}  // namespace

Field hilbert_periodic(const Field& f) {
    if (!f.grid().periodic()) {
        throw std::invalid_argument("spectral Hilbert transform requires a periodic grid");
    }
    const std::size_t n = f.size();
    fft::Spectrum c = f.spectrum();
    c[0] = 0.0;
    for (std::size_t m = 1; m < c.size(); ++m) {
        c[m] *= std::complex<double>(0.0, -1.0);
    }
    c[n / 2] = 0.0;
    return Field::from_spectrum(f.grid_ptr(), c);
}

Field hilbert_alternating_trapezoidal(const Field& f) {
    if (f.grid().periodic()) {
        throw std::invalid_argument("alternating trapezoidal rule requires a line grid");
    }
    const std::size_t n = f.size();
    std::vector<double> padded(2 * n, 0.0);
    std::copy(f.values().begin(), f.values().end(), padded.begin());
    fft::Spectrum c = fft::forward(padded);
    const fft::Spectrum& k = alternating_kernel_spectrum(n);
    for (std::size_t m = 0; m < c.size(); ++m) c[m] *= k[m];
    std::vector<double> conv = fft::inverse(c, 2 * n);
    conv.resize(n);
    return Field(f.grid_ptr(), std::move(conv));
}

Field hilbert(const Field& f) {
    return f.grid().periodic() ? hilbert_periodic(f) : hilbert_alternating_trapezoidal(f);
}

TestWeight::TestWeight(Kind kind, double anchor, std::function<double(double)> phi,
                       double lipschitz, std::string description)
    : kind_(kind),
      anchor_(anchor),
      phi_(std::move(phi)),
      lipschitz_(lipschitz),
      description_(std::move(description)) {}

TestWeight TestWeight::shifted_linear(double a) {
    return TestWeight(Kind::ShiftedLinear, a, nullptr, 1.0, "x - " + std::to_string(a));
}

TestWeight TestWeight::reflected_linear(double b) {
    return TestWeight(Kind::ReflectedLinear, b, nullptr, 1.0, std::to_string(b) + " - x");
}

TestWeight TestWeight::lipschitz(std::function<double(double)> phi, double lipschitz_constant,
                                 std::string description) {
    if (!phi) throw std::invalid_argument("Lipschitz weight needs a callable");
    return TestWeight(Kind::Lipschitz, 0.0, std::move(phi), lipschitz_constant,
                      std::move(description));
}

double TestWeight::operator()(double x) const {
    switch (kind_) {
        case Kind::ShiftedLinear: return x - anchor_;
        case Kind::ReflectedLinear: return anchor_ - x;
        case Kind::Lipschitz: return phi_(x);
    }
    return 0.0;
}

double TestWeight::diagonal_slope(double x, double h) const {
    switch (kind_) {
        case Kind::ShiftedLinear: return 1.0;
        case Kind::ReflectedLinear: return -1.0;
        case Kind::Lipschitz: {
            // Eighth-order central difference.
            static constexpr double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
            double d = 0.0;
            for (int k = 0; k < 4; ++k) d += w[k] * (phi_(x + (k + 1) * h) - phi_(x - (k + 1) * h));
            return d / h;
        }
    }
    return 0.0;
}

void TestWeight::validate_on(const Grid& grid) const {
    if (!grid.periodic()) return;
    if (kind_ != Kind::Lipschitz) {
        throw std::invalid_argument("linear weights are not periodic; use a Lipschitz weight");
    }
    const double period = grid.period();
    for (double x : grid.points()) {
        const double a = phi_(x);
        const double b = phi_(x + period);
        if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
            throw std::invalid_argument("weight '" + description_ +
                                        "' does not share the grid period");
        }
    }
}

double weighted_bilinear_lhs(const Field& f, const TestWeight& phi) {
    phi.validate_on(f.grid());
    const Field hf = hilbert(f);
    const auto x = f.grid().points();
    std::vector<double> integrand(f.size());
    for (std::size_t j = 0; j < integrand.size(); ++j) {
        integrand[j] = phi(x[j]) * f[j] * hf[j];
    }
    return integrate(f.grid(), integrand);
}

double weighted_bilinear_rhs(const Field& f, const TestWeight& phi) {
    const Grid& g = f.grid();
    phi.validate_on(g);
    const std::size_t n = f.size();
    const double h = g.spacing();
    const auto x = g.points();

    std::vector<double> w(n, h);  // quadrature weights
    if (!g.periodic()) {
        w.front() *= 0.5;
        w.back() *= 0.5;
    }
    std::vector<double> phi_x(n), fw(n);
    for (std::size_t i = 0; i < n; ++i) {
        phi_x[i] = phi(x[i]);
        fw[i] = f[i] * w[i];
    }

    double sum = 0.0;
    if (g.periodic()) {
        const double period = g.period();
        const double scale = pi / period;
        for (std::size_t i = 0; i < n; ++i) {
            if (fw[i] == 0.0) continue;
            double row = fw[i] * phi.diagonal_slope(x[i], h) * period / pi;
            for (std::size_t j = i + 1; j < n; ++j) {
                // Symmetric in (i, j): count each off-diagonal pair twice.
                row += 2.0 * fw[j] * (phi_x[i] - phi_x[j]) / std::tan(scale * (x[i] - x[j]));
            }
            sum += fw[i] * row;
        }
        return sum / (2.0 * period);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (fw[i] == 0.0) continue;
        double row = fw[i] * phi.diagonal_slope(x[i], h);
        for (std::size_t j = i + 1; j < n; ++j) {
            row += 2.0 * fw[j] * (phi_x[i] - phi_x[j]) / (x[i] - x[j]);
        }
        sum += fw[i] * row;
    }
    return sum / (2.0 * pi);
}

}  // namespace nonlocal
