#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonlocal/calculus.hpp"
#include "nonlocal/field.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/norms.hpp"

using namespace nonlocal;
using std::numbers::pi;

TEST_CASE("grid construction rejects bad specs") {
    CHECK_THROWS_AS(make_grid(GridSpec::periodic(4)), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(GridSpec::periodic(100)), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(GridSpec::line(64, 0.0, 1.0, 0.0, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(GridSpec::line(64, 0.0, 1.0, 0.6, 0.4)), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(GridSpec::line(64, 1.0, 1.0, 0.2, 0.4)), std::invalid_argument);
    CHECK_NOTHROW(make_grid(GridSpec::line(100, 0.0, 1.0, 0.45, 0.55)));
}

TEST_CASE("grid points and wavenumbers") {
    auto g = make_grid(GridSpec::periodic(16, 2.0, -1.0));
    CHECK(g->size() == 16);
    CHECK(g->spacing() == doctest::Approx(0.125));
    CHECK(g->point(0) == -1.0);
    CHECK(g->point(8) == doctest::Approx(0.0));
    CHECK(g->wavenumber(3) == doctest::Approx(3.0 * pi));
    CHECK(grid_kind_from_string(to_string(GridKind::Line)) == GridKind::Line);
    CHECK_THROWS(grid_kind_from_string("torus"));
}

TEST_CASE("spectrum cache follows mutation") {
    auto g = make_grid(GridSpec::periodic(32));
    Field f = Field::sample(g, [](double x) { return std::cos(2 * pi * x); });
    CHECK_FALSE(f.has_cached_spectrum());
    CHECK(f.spectrum()[1].real() == doctest::Approx(16.0));
    CHECK(f.has_cached_spectrum());
    f.values_mut()[0] = 5.0;
    CHECK_FALSE(f.has_cached_spectrum());

    Field back = Field::from_spectrum(g, f.spectrum());
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(back[j] == doctest::Approx(f[j]).epsilon(1e-13));
}

TEST_CASE("compact sampling vanishes outside the support") {
    auto g = make_grid(GridSpec::line(200, 0.0, 1.0, 0.4, 0.6));
    Field f = Field::sample(g, [](double) { return 1.0; }, true);
    CHECK(f.compact_support());
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(f[j] == (g->in_support(g->point(j)) ? 1.0 : 0.0));
}

TEST_CASE("spectral derivatives of trigonometric data") {
    auto g = make_grid(GridSpec::periodic(64));
    Field f = Field::sample(g, [](double x) { return std::sin(2 * pi * x) + 0.5 * std::cos(6 * pi * x); });
    Field fx = spectral_derivative(f);
    Field fxx = spectral_second_derivative(f);
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double x = g->point(j);
        CHECK(fx[j] == doctest::Approx(2 * pi * std::cos(2 * pi * x) - 3 * pi * std::sin(6 * pi * x)).epsilon(1e-11));
        CHECK(fxx[j] == doctest::Approx(-4 * pi * pi * std::sin(2 * pi * x) - 18 * pi * pi * std::cos(6 * pi * x))
                            .epsilon(1e-10));
    }
    auto line = make_grid(GridSpec::line(64, 0.0, 1.0, 0.2, 0.8));
    CHECK_THROWS_AS(spectral_derivative(Field(line)), std::invalid_argument);
}

TEST_CASE("fourth-order differences converge at fourth order") {
    auto err = [](std::size_t n) {
        auto g = make_grid(GridSpec::line(n, 0.0, 1.0, 0.2, 0.8));
        Field f = Field::sample(g, [](double x) { return std::exp(std::sin(3 * x)); });
        Field fx = fd4_derivative(f);
        double e = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double x = g->point(j);
            e = std::max(e, std::abs(fx[j] - 3 * std::cos(3 * x) * std::exp(std::sin(3 * x))));
        }
        return e;
    };
    const double order = std::log2(err(200) / err(400));
    CHECK(order > 3.7);
}

TEST_CASE("quadrature and norms") {
    auto g = make_grid(GridSpec::periodic(64));
    Field s = Field::sample(g, [](double x) { return std::sin(2 * pi * x); });
    CHECK(l2_norm(s) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(h1_norm(s) == doctest::Approx(std::sqrt(0.5 + 2 * pi * pi)).epsilon(1e-12));

    auto line = make_grid(GridSpec::line(1001, 0.0, 1.0, 0.2, 0.8));
    Field x2 = Field::sample(line, [](double x) { return x * x; });
    // Trapezoid on [0, 1 - h]
    const double b = 1.0 - line->spacing();
    CHECK(integrate(x2) == doctest::Approx(b * b * b / 3).epsilon(1e-6));
}

TEST_CASE("norm records accumulate the BKM integral by the trapezoid rule") {
    auto g = make_grid(GridSpec::periodic(16));
    SolutionState a{Field::sample(g, [](double) { return 2.0; }), Field::sample(g, [](double) { return -1.0; }), 0.0, 0};
    SolutionState b{Field::sample(g, [](double) { return 4.0; }), Field(g), 0.5, 1};
    NormRecord ra = norms(a);
    NormRecord rb = norms(b, &ra);
    CHECK(ra.bkm_integrand == 3.0);
    CHECK(ra.bkm_integral == 0.0);
    CHECK(rb.bkm_integral == doctest::Approx(0.25 * (3.0 + 4.0)));
    CHECK(std::isnan(ra.weighted_mass));
}
