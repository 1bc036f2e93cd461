#include "nonlocal/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nonlocal::fft {
namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// The FFTW planner is not thread safe; execution with the new-array
// interface is, so plans are shared and buffers are per thread.
std::mutex planner_mutex;

const PlanPair& plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard<std::mutex> lock(planner_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const int ni = static_cast<int>(n);
    double* real = fftw_alloc_real(n);
    fftw_complex* cplx = fftw_alloc_complex(n / 2 + 1);
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_1d(ni, real, cplx, FFTW_ESTIMATE);
    p.c2r = fftw_plan_dft_c2r_1d(ni, cplx, real, FFTW_ESTIMATE);
    fftw_free(cplx);
    fftw_free(real);
    if (p.r2c == nullptr || p.c2r == nullptr) {
        throw std::runtime_error("FFTW failed to create a plan");
    }
    return cache.emplace(n, p).first->second;
}

// SIMD-aligned scratch owned by one thread.
class Scratch {
public:
    explicit Scratch(std::size_t n)
        : real_(fftw_alloc_real(n)), cplx_(fftw_alloc_complex(n / 2 + 1)) {}
    ~Scratch() {
        fftw_free(cplx_);
        fftw_free(real_);
    }
    Scratch(const Scratch&) = delete;
    Scratch& operator=(const Scratch&) = delete;

    double* real() { return real_; }
    fftw_complex* cplx() { return cplx_; }

private:
    double* real_;
    fftw_complex* cplx_;
};

Scratch& scratch_for(std::size_t n) {
    thread_local std::map<std::size_t, Scratch> buffers;
    auto it = buffers.find(n);
    if (it == buffers.end()) it = buffers.try_emplace(n, n).first;
    return it->second;
}

}  // namespace

Spectrum forward(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return {};
    const PlanPair& p = plans_for(n);
    Scratch& s = scratch_for(n);
    std::copy(values.begin(), values.end(), s.real());
    fftw_execute_dft_r2c(p.r2c, s.real(), s.cplx());
    const auto* c = reinterpret_cast<const std::complex<double>*>(s.cplx());
    return Spectrum(c, c + n / 2 + 1);
}

std::vector<double> inverse(std::span<const std::complex<double>> coeffs, std::size_t n) {
    if (n == 0) return {};
    if (coeffs.size() != n / 2 + 1) {
        throw std::invalid_argument("spectrum length does not match n/2 + 1");
    }
    const PlanPair& p = plans_for(n);
    Scratch& s = scratch_for(n);
    std::copy(coeffs.begin(), coeffs.end(), reinterpret_cast<std::complex<double>*>(s.cplx()));
    fftw_execute_dft_c2r(p.c2r, s.cplx(), s.real());
    std::vector<double> out(s.real(), s.real() + n);
    const double scale = 1.0 / static_cast<double>(n);
    for (double& x : out) x *= scale;
    return out;
}

}  // namespace nonlocal::fft
