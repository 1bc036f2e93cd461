#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonlocal/calculus.hpp"
#include "nonlocal/integrator.hpp"

using namespace nonlocal;
using std::numbers::pi;

namespace {

SolutionState smooth_state(GridPtr g, double v_scale = 1.0) {
    return {Field::sample(g, [](double x) { return 1.0 + 0.5 * std::sin(2 * pi * x); }),
            Field::sample(g, [&](double x) { return v_scale * 0.3 * std::cos(2 * pi * x); }), 0.0, 0};
}

double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

SolutionState fixed_steps(SolutionState s, const ModelSpec& m, double dt, int steps) {
    for (int k = 0; k < steps; ++k) s = advance(s, m, dt);
    return s;
}

}  // namespace

TEST_CASE("RK4 integrates u_t = u v exactly up to fourth-order error") {
    // Constant u: H(u^2) = 0, so v stays put and u grows like exp(v t).
    auto g = make_grid(GridSpec::periodic(16));
    auto err = [&](int steps) {
        SolutionState s{Field::sample(g, [](double) { return 1.0; }), Field::sample(g, [](double) { return 1.0; }), 0.0, 0};
        s = fixed_steps(s, ModelSpec{}, 1.0 / steps, steps);
        CHECK(s.t == doctest::Approx(1.0));
        return std::abs(s.u[0] - std::exp(1.0));
    };
    const double e1 = err(10), e2 = err(20);
    CHECK(e1 < 1e-5);
    CHECK(std::log2(e1 / e2) > 3.8);
}

TEST_CASE("integrating factor reproduces the heat semigroup") {
    auto g = make_grid(GridSpec::periodic(64));
    SolutionState s{Field::sample(g, [](double x) { return std::sin(2 * pi * x); }),
                    Field::sample(g, [](double x) { return std::cos(4 * pi * x); }), 0.0, 0};
    ModelSpec m;
    m.nu = 0.05;
    NonlinearFn zero = [](const SolutionState& st) { return Tendency{Field(st.u.grid_ptr()), Field(st.v.grid_ptr())}; };
    SolutionState out = integrating_factor_rk4_step(s, m, 0.7, zero);
    const double du = std::exp(-0.05 * 4 * pi * pi * 0.7);
    const double dv = std::exp(-0.05 * 16 * pi * pi * 0.7);
    for (std::size_t j = 0; j < s.u.size(); ++j) {
        CHECK(out.u[j] == doctest::Approx(du * s.u[j]).scale(1.0).epsilon(1e-13));
        CHECK(out.v[j] == doctest::Approx(dv * s.v[j]).scale(1.0).epsilon(1e-13));
    }
    CHECK(out.t == doctest::Approx(0.7));
}

TEST_CASE("vanishing viscosity matches the plain RK4 step") {
    auto g = make_grid(GridSpec::periodic(128));
    const SolutionState s = smooth_state(g);
    ModelSpec visc;
    visc.nu = 1e-16;
    const SolutionState a = integrating_factor_rk4_step(s, visc, 1e-3);
    const SolutionState b = rk4_step(s, ModelSpec{}, 1e-3);
    CHECK(max_diff(a.u, b.u) < 1e-12);
    CHECK(max_diff(a.v, b.v) < 1e-12);
    CHECK_THROWS_AS(integrating_factor_rk4_step(s, ModelSpec{}, 1e-3), std::invalid_argument);
}

TEST_CASE("(1,1) solution is the rescaled canonical solution") {
    auto g = make_grid(GridSpec::periodic(128));
    ModelSpec unit;
    ModelSpec canonical;
    canonical.alpha = 2.0;
    const ScalingParams p = normalize_scaling(unit);
    const SolutionState s = smooth_state(g);
    SolutionState sc = s;
    for (auto& v : sc.v.values_mut()) v /= p.mu;
    const int steps = 200;
    const double dt = 1e-3;
    const SolutionState a = fixed_steps(s, unit, dt, steps);
    const SolutionState b = fixed_steps(sc, canonical, p.gamma * dt, steps);
    Field bv = b.v;
    for (auto& v : bv.values_mut()) v *= p.mu;
    CHECK(max_diff(a.u, b.u) / a.u.max_abs() < 1e-10);
    CHECK(max_diff(a.v, bv) / a.v.max_abs() < 1e-10);
}

TEST_CASE("mirror image of a full-system solution solves the sign-flipped system") {
    const std::size_t n = 128;
    auto g = make_grid(GridSpec::periodic(n));
    const SolutionState s = smooth_state(g);
    SolutionState mirrored = s;
    auto mirror = [n](const Field& f) {
        Field out(f.grid_ptr());
        for (std::size_t j = 0; j < n; ++j) out.values_mut()[j] = f[(n - j) % n];
        return out;
    };
    mirrored.u = mirror(s.u);
    mirrored.v = mirror(s.v);
    ModelSpec flipped;
    flipped.variant = ModelVariant::SignFlipped;
    const SolutionState a = fixed_steps(s, ModelSpec{}, 1e-3, 100);
    const SolutionState b = fixed_steps(mirrored, flipped, 1e-3, 100);
    CHECK(max_diff(mirror(a.u), b.u) < 1e-12);
    CHECK(max_diff(mirror(a.v), b.v) < 1e-12);
}

TEST_CASE("run honours the stop spec and snapshot requests") {
    auto g = make_grid(GridSpec::periodic(64));
    const SolutionState s = smooth_state(g);
    StopSpec stop;
    stop.max_time = 0.0105;
    RunOptions opts;
    opts.snapshot_times = {0.005, 0.001};
    opts.snapshot_sup_thresholds = {1e9};
    opts.record_every = 4;
    StepPolicy fixed;
    fixed.c_dt = 1.0;  // dt = dt_max = 1e-3 throughout
    const RunResult r = run(s, ModelSpec{}, fixed, stop, opts);
    CHECK(r.stop_reason == StopReason::MaxTime);
    CHECK(r.final_state.t == doctest::Approx(0.0105).epsilon(1e-14));
    CHECK(r.steps_taken == 11);
    REQUIRE(r.snapshots.size() == 2);
    CHECK(r.snapshots[0].trigger_value == 0.001);
    CHECK(r.snapshots[1].trigger_value == 0.005);
    CHECK(r.snapshots[1].state.t >= 0.005);
    // Records at steps 0, 4, 8 and the final state.
    REQUIRE(r.norm_history.size() == 4);
    CHECK(r.norm_history.back().t == r.final_state.t);
    CHECK(r.norm_history.back().bkm_integral > 0.0);
}

TEST_CASE("run stops on the sup-norm threshold and on the step floor") {
    auto g = make_grid(GridSpec::periodic(64));
    const SolutionState s = smooth_state(g, 10.0);
    StopSpec stop;
    stop.max_sup = 2.0;
    const RunResult r = run(s, ModelSpec{}, StepPolicy{}, stop);
    CHECK(r.stop_reason == StopReason::SupNormThreshold);
    CHECK(r.norm_history.back().sup_u >= 2.0);
    CHECK(r.norm_history[r.norm_history.size() - 2].sup_u < 2.0);

    StepPolicy tight;
    tight.dt_max = 1e-2;
    tight.dt_floor = 1e-3;
    tight.c_dt = 1e-3;
    stop.max_sup = 1e9;
    const RunResult f = run(s, ModelSpec{}, tight, stop);
    CHECK(f.stop_reason == StopReason::DtFloor);
}

TEST_CASE("run reports non-finite states") {
    auto g = make_grid(GridSpec::periodic(64));
    const SolutionState s = smooth_state(g, 10.0);
    StepPolicy reckless;
    reckless.c_dt = 1e300;
    reckless.dt_max = 1e300;
    StopSpec stop;
    stop.max_time = 1e308;
    const RunResult r = run(s, ModelSpec{}, reckless, stop);
    CHECK(r.stop_reason == StopReason::NonFinite);
    CHECK(r.final_state.u.all_finite());
}

TEST_CASE("run rejects invalid requests") {
    auto g = make_grid(GridSpec::periodic(64));
    const SolutionState s = smooth_state(g);
    CHECK_THROWS_AS(run(s, ModelSpec{}, StepPolicy{}, StopSpec{}), std::invalid_argument);
    StepPolicy bad;
    bad.c_dt = -1.0;
    StopSpec stop;
    stop.max_time = 1.0;
    CHECK_THROWS_AS(run(s, ModelSpec{}, bad, stop), std::invalid_argument);
    auto line = make_grid(GridSpec::line(64, 0.0, 1.0, 0.2, 0.8));
    SolutionState ls{Field(line), Field(line), 0.0, 0};
    ModelSpec visc;
    visc.nu = 0.1;
    CHECK_THROWS_AS(run(ls, visc, StepPolicy{}, stop), std::invalid_argument);
}

TEST_CASE("zero u keeps v frozen") {
    auto g = make_grid(GridSpec::line(256, 0.0, 1.0, 0.4, 0.6));
    SolutionState s{Field(g, true), Field::sample(g, [](double) { return -4.0; }), 0.0, 0};
    ModelSpec m;
    m.alpha = 2.0;
    StopSpec stop;
    stop.max_time = 0.05;
    const RunResult r = run(s, m, StepPolicy{}, stop);
    CHECK(r.final_state.u.max_abs() == 0.0);
    CHECK(max_diff(r.final_state.v, s.v) == 0.0);
}

TEST_CASE("weighted mass monitor") {
    auto g = make_grid(GridSpec::line(512, 0.0, 1.0, 0.4, 0.6));
    Field u = Field::sample(g, [](double) { return 1.0; }, true);
    const double mass = weighted_mass(u, TestWeight::shifted_linear(0.4));
    CHECK(mass == doctest::Approx(0.5 * 0.2 * 0.2).epsilon(2e-2));
}
