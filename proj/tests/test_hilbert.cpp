#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nonlocal/calculus.hpp"
#include "nonlocal/hilbert.hpp"

using namespace nonlocal;
using std::numbers::pi;

namespace {

// Direct alternating sum, the reference for the FFT convolution.
std::vector<double> alternating_direct(const Field& f) {
    const Grid& g = f.grid();
    const std::size_t n = f.size();
    const double h = g.spacing();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = (i + 1) % 2; j < n; j += 2) {
            out[i] += f[j] / (g.point(i) - g.point(j)) * 2.0 * h / pi;
        }
    }
    return out;
}

double bump(double x, double c, double w) {
    const double s = (x - c) / w;
    return std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
}

}  // namespace

TEST_CASE("periodic transform maps cosines to sines") {
    auto g = make_grid(GridSpec::periodic(64));
    Field f = Field::sample(g, [](double x) { return std::cos(2 * pi * x) + 3.0 * std::sin(6 * pi * x) + 7.0; });
    Field hf = hilbert(f);
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double x = g->point(j);
        CHECK(hf[j] == doctest::Approx(std::sin(2 * pi * x) - 3.0 * std::cos(6 * pi * x)).epsilon(1e-12));
    }
}

TEST_CASE("constants are annihilated exactly") {
    auto g = make_grid(GridSpec::periodic(128));
    Field c = Field::sample(g, [](double) { return 2.5; });
    Field hc = hilbert_periodic(c);
    for (double v : hc.values()) CHECK(v == 0.0);
    for (const auto& z : hc.spectrum()) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("H(Hf) = -f for mean-zero data") {
    auto g = make_grid(GridSpec::periodic(256));
    Field f = Field::sample(g, [](double x) { return std::exp(std::sin(2 * pi * x)) - std::cyl_bessel_i(0, 1.0); });
    Field hhf = hilbert(hilbert(f));
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(hhf[j] == doctest::Approx(-f[j]).epsilon(1e-10));
}

TEST_CASE("alternating rule matches the direct sum") {
    auto g = make_grid(GridSpec::line(600, -1.0, 2.0, 0.2, 0.8));
    Field f = Field::sample(g, [](double x) { return bump(x, 0.5, 0.3) * (1.0 + x); }, true);
    Field hf = hilbert_alternating_trapezoidal(f);
    const auto ref = alternating_direct(f);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(hf[i] == doctest::Approx(ref[i]).epsilon(1e-12).scale(1.0));
    CHECK_THROWS_AS(hilbert_alternating_trapezoidal(Field(make_grid(GridSpec::periodic(16)))),
                    std::invalid_argument);
    CHECK_THROWS_AS(hilbert_periodic(f), std::invalid_argument);
}

TEST_CASE("line transform of 1/(1+x^2) is x/(1+x^2)") {
    auto g = make_grid(GridSpec::line(16384, -100.0, 100.0, -1.0, 1.0));
    Field f = Field::sample(g, [](double x) { return 1.0 / (1.0 + x * x); });
    Field hf = hilbert(f);
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double x = g->point(j);
        if (std::abs(x) <= 2.0) CHECK(hf[j] == doctest::Approx(x / (1.0 + x * x)).scale(1.0).epsilon(1e-6));
    }
}

TEST_CASE("periodic weighted identity with a Lipschitz weight") {
    auto g = make_grid(GridSpec::periodic(256));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    auto phi = TestWeight::lipschitz([](double x) { return std::sin(2 * pi * x) + 0.3 * std::cos(4 * pi * x); },
                                     2 * pi * 1.6, "trig");
    for (int trial = 0; trial < 5; ++trial) {
        const double a = coef(rng), b = coef(rng), c = coef(rng);
        Field f = Field::sample(g, [&](double x) {
            return a * std::cos(2 * pi * x) + b * std::sin(6 * pi * x) + c * std::exp(std::cos(2 * pi * x));
        });
        const double lhs = weighted_bilinear_lhs(f, phi);
        const double rhs = weighted_bilinear_rhs(f, phi);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
    }
}

TEST_CASE("linear weights give the squared mean on the line") {
    auto g = make_grid(GridSpec::line(512, 0.0, 1.0, 0.3, 0.7));
    Field f = Field::sample(g, [](double x) { return bump(x, 0.5, 0.2) * (2.0 + std::sin(9 * x)); }, true);
    const double mass = integrate(f);
    for (const TestWeight& phi : {TestWeight::shifted_linear(0.3), TestWeight::reflected_linear(0.7)}) {
        const double rhs = weighted_bilinear_rhs(f, phi);
        const double slope = phi.diagonal_slope(0.5, 0.0);
        CHECK(rhs == doctest::Approx(slope * mass * mass / (2 * pi)).epsilon(1e-12));
        CHECK(weighted_bilinear_lhs(f, phi) == doctest::Approx(rhs).epsilon(1e-7));
    }
}

TEST_CASE("weights are validated against the grid") {
    auto periodic = make_grid(GridSpec::periodic(64));
    CHECK_THROWS_AS(TestWeight::shifted_linear(0.0).validate_on(*periodic), std::invalid_argument);
    auto aperiodic = TestWeight::lipschitz([](double x) { return x; }, 1.0, "ramp");
    CHECK_THROWS_AS(aperiodic.validate_on(*periodic), std::invalid_argument);
    auto line = make_grid(GridSpec::line(64, 0.0, 1.0, 0.2, 0.8));
    CHECK_NOTHROW(aperiodic.validate_on(*line));
    CHECK(TestWeight::reflected_linear(1.0)(0.25) == 0.75);
    CHECK(TestWeight::reflected_linear(1.0).diagonal_slope(0.3, 0.01) == -1.0);
}
