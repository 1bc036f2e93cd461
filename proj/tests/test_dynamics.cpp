#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonlocal/dynamics.hpp"
#include "nonlocal/hilbert.hpp"

using namespace nonlocal;
using std::numbers::pi;

namespace {

SolutionState trig_state(std::size_t n) {
    auto g = make_grid(GridSpec::periodic(n));
    return {Field::sample(g, [](double x) { return std::cos(2 * pi * x); }),
            Field::sample(g, [](double x) { return 1.0 + 0.5 * std::sin(2 * pi * x); }), 0.0, 0};
}

}  // namespace

TEST_CASE("full system right-hand side") {
    const SolutionState s = trig_state(64);
    ModelSpec m;
    m.alpha = 1.5;
    m.beta = 0.5;
    const Tendency f = rhs(s, m);
    const Grid& g = s.u.grid();
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.point(j);
        CHECK(f.du_dt[j] == doctest::Approx(1.5 * s.u[j] * s.v[j]));
        // cos^2 = 1/2 + cos(4 pi x)/2, whose transform is sin(4 pi x)/2.
        CHECK(f.dv_dt[j] == doctest::Approx(0.5 * 0.5 * std::sin(4 * pi * x)).scale(1.0).epsilon(1e-13));
    }
    m.variant = ModelVariant::SignFlipped;
    const Tendency flipped = rhs(s, m);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(flipped.dv_dt[j] == doctest::Approx(-f.dv_dt[j]));
}

TEST_CASE("CLM variant leaves v untouched") {
    const SolutionState s = trig_state(64);
    ModelSpec m;
    m.variant = ModelVariant::Clm;
    const Tendency f = rhs(s, m);
    const Field hu = hilbert(s.u);
    for (std::size_t j = 0; j < s.u.size(); ++j) {
        CHECK(f.du_dt[j] == doctest::Approx(s.u[j] * hu[j]).scale(1.0));
        CHECK(f.dv_dt[j] == 0.0);
    }
    m.clm_form = ClmForm::Squared;
    const Tendency g = rhs(s, m);
    for (std::size_t j = 0; j < s.u.size(); ++j) CHECK(g.du_dt[j] == doctest::Approx(4.0 * f.du_dt[j]).scale(1.0));
}

TEST_CASE("CLM reduction: w = u^2 with v = H(u^2) obeys w_t = 4 w H w") {
    auto g = make_grid(GridSpec::periodic(128));
    Field u = Field::sample(g, [](double x) { return 1.0 + 0.3 * std::sin(2 * pi * x) + 0.2 * std::cos(6 * pi * x); });
    Field w(g);
    for (std::size_t j = 0; j < u.size(); ++j) w.values_mut()[j] = u[j] * u[j];
    SolutionState s{u, hilbert(w), 0.0, 0};
    ModelSpec m;
    m.alpha = 2.0;
    const Tendency f = rhs(s, m);
    const Field clm = clm_rhs(w, 4.0);
    for (std::size_t j = 0; j < u.size(); ++j) {
        CHECK(2.0 * u[j] * f.du_dt[j] == doctest::Approx(clm[j]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("viscous terms") {
    const SolutionState s = trig_state(32);
    ModelSpec m;
    m.nu = 0.01;
    const Tendency plain = rhs(s, m);
    const Tendency visc = rhs(s, m, true);
    for (std::size_t j = 0; j < s.u.size(); ++j) {
        CHECK(visc.du_dt[j] - plain.du_dt[j] == doctest::Approx(-0.01 * 4 * pi * pi * s.u[j]).scale(1.0));
    }
    auto line = make_grid(GridSpec::line(64, 0.0, 1.0, 0.2, 0.8));
    SolutionState ls{Field(line), Field(line), 0.0, 0};
    CHECK_THROWS_AS(rhs(ls, m, true), std::invalid_argument);
}

TEST_CASE("model validation and scaling parameters") {
    ModelSpec m;
    m.nu = -1.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.nu = 0.0;
    m.alpha = -1.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    CHECK_THROWS_AS(normalize_scaling(m), std::invalid_argument);
    m.variant = ModelVariant::Clm;
    CHECK_NOTHROW(m.validate());

    ModelSpec unit;
    const ScalingParams p = normalize_scaling(unit);
    CHECK(p.gamma == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(p.mu == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    ModelSpec canonical;
    canonical.alpha = 2.0;
    CHECK(normalize_scaling(canonical).gamma == 1.0);
    CHECK(normalize_scaling(canonical).mu == 1.0);

    CHECK(model_variant_from_string(to_string(ModelVariant::SignFlipped)) == ModelVariant::SignFlipped);
    CHECK(clm_form_from_string(to_string(ClmForm::Squared)) == ClmForm::Squared);
    CHECK_THROWS(model_variant_from_string("burgers"));
}

TEST_CASE("mismatched grids are rejected") {
    auto a = make_grid(GridSpec::periodic(32));
    auto b = make_grid(GridSpec::periodic(64));
    SolutionState s{Field(a), Field(b), 0.0, 0};
    CHECK_THROWS_AS(rhs(s, ModelSpec{}), std::invalid_argument);
}
