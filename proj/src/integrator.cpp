#include "nonlocal/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nonlocal/calculus.hpp"

namespace nonlocal {
namespace {

// a + s * b, keeping a's grid and support tag.
Field axpy(const Field& a, double s, const Field& b) {
    std::vector<double> out(a.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] + s * b[j];
    return Field(a.grid_ptr(), std::move(out), a.compact_support());
}

Field rk4_combine(const Field& y, double dt, const Field& k1, const Field& k2, const Field& k3,
                  const Field& k4) {
    std::vector<double> out(y.size());
    const double c = dt / 6.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = y[j] + c * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    return Field(y.grid_ptr(), std::move(out), y.compact_support());
}

SolutionState shifted(const SolutionState& s, double c, const Tendency& k, double t) {
    return SolutionState{axpy(s.u, c, k.du_dt), axpy(s.v, c, k.dv_dt), t, s.step};
}

}  // namespace

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::MaxTime: return "max-time";
        case StopReason::SupNormThreshold: return "sup-norm-threshold";
        case StopReason::DtFloor: return "dt-floor";
        case StopReason::NonFinite: return "non-finite";
    }
    return "unknown";
}

void StepPolicy::validate() const {
    if (!(c_dt > 0.0)) throw std::invalid_argument("c_dt must be positive");
    if (!(dt_floor > 0.0 && dt_floor < dt_max)) {
        throw std::invalid_argument("step policy requires 0 < dt_floor < dt_max");
    }
    if (recompute_every == 0) throw std::invalid_argument("recompute_every must be >= 1");
}

double StepPolicy::step_size(double sup_u) const {
    if (!(sup_u > 0.0)) return dt_max;
    return std::min(dt_max, c_dt / sup_u);
}

SolutionState rk4_step(const SolutionState& state, const ModelSpec& model, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    const bool viscous = model.nu > 0.0;
    const double t = state.t;
    const Tendency k1 = rhs(state, model, viscous);
    const Tendency k2 = rhs(shifted(state, 0.5 * dt, k1, t + 0.5 * dt), model, viscous);
    const Tendency k3 = rhs(shifted(state, 0.5 * dt, k2, t + 0.5 * dt), model, viscous);
    const Tendency k4 = rhs(shifted(state, dt, k3, t + dt), model, viscous);
    return SolutionState{rk4_combine(state.u, dt, k1.du_dt, k2.du_dt, k3.du_dt, k4.du_dt),
                         rk4_combine(state.v, dt, k1.dv_dt, k2.dv_dt, k3.dv_dt, k4.dv_dt),
                         t + dt, state.step + 1};
}

SolutionState integrating_factor_rk4_step(const SolutionState& state, const ModelSpec& model,
                                          double dt) {
    return integrating_factor_rk4_step(state, model, dt, [&model](const SolutionState& s) {
        return rhs(s, model, false);
    });
}

SolutionState integrating_factor_rk4_step(const SolutionState& state, const ModelSpec& model,
                                          double dt, const NonlinearFn& nonlinear) {
    const Grid& g = state.u.grid();
    if (!g.periodic()) {
        throw std::invalid_argument("integrating-factor stepping requires a periodic grid");
    }
    if (!(model.nu > 0.0)) {
        throw std::invalid_argument("integrating-factor stepping requires nu > 0");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");

    const GridPtr& grid = state.u.grid_ptr();
    const std::size_t m_count = g.size() / 2 + 1;
    // Exponents are taken relative to the step start, so they never exceed 1.
    std::vector<double> e_half(m_count), e_full(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        const double k = g.wavenumber(m);
        e_half[m] = std::exp(-model.nu * k * k * 0.5 * dt);
        e_full[m] = e_half[m] * e_half[m];
    }

    const fft::Spectrum& u0 = state.u.spectrum();
    const fft::Spectrum& v0 = state.v.spectrum();
    const double t0 = state.t;

    struct Stage {
        fft::Spectrum du, dv;
    };
    auto evaluate = [&](const fft::Spectrum& u_hat, const fft::Spectrum& v_hat, double t) {
        SolutionState s{Field::from_spectrum(grid, u_hat, state.u.compact_support()),
                        Field::from_spectrum(grid, v_hat), t, state.step};
        const Tendency k = nonlinear(s);
        return Stage{k.du_dt.spectrum(), k.dv_dt.spectrum()};
    };

    fft::Spectrum ua(m_count), va(m_count);
    const Stage k1 = evaluate(u0, v0, t0);
    for (std::size_t m = 0; m < m_count; ++m) {
        ua[m] = e_half[m] * (u0[m] + 0.5 * dt * k1.du[m]);
        va[m] = e_half[m] * (v0[m] + 0.5 * dt * k1.dv[m]);
    }
    const Stage k2 = evaluate(ua, va, t0 + 0.5 * dt);
    for (std::size_t m = 0; m < m_count; ++m) {
        ua[m] = e_half[m] * u0[m] + 0.5 * dt * k2.du[m];
        va[m] = e_half[m] * v0[m] + 0.5 * dt * k2.dv[m];
    }
    const Stage k3 = evaluate(ua, va, t0 + 0.5 * dt);
    for (std::size_t m = 0; m < m_count; ++m) {
        ua[m] = e_full[m] * u0[m] + dt * e_half[m] * k3.du[m];
        va[m] = e_full[m] * v0[m] + dt * e_half[m] * k3.dv[m];
    }
    const Stage k4 = evaluate(ua, va, t0 + dt);
    const double c = dt / 6.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        ua[m] = e_full[m] * u0[m] +
                c * (e_full[m] * k1.du[m] + 2.0 * e_half[m] * (k2.du[m] + k3.du[m]) + k4.du[m]);
        va[m] = e_full[m] * v0[m] +
                c * (e_full[m] * k1.dv[m] + 2.0 * e_half[m] * (k2.dv[m] + k3.dv[m]) + k4.dv[m]);
    }
    return SolutionState{Field::from_spectrum(grid, ua, state.u.compact_support()),
                         Field::from_spectrum(grid, va), t0 + dt, state.step + 1};
}

SolutionState advance(const SolutionState& state, const ModelSpec& model, double dt) {
    if (model.nu > 0.0) return integrating_factor_rk4_step(state, model, dt);
    return rk4_step(state, model, dt);
}

double weighted_mass(const Field& u, const TestWeight& phi) {
    const auto x = u.grid().points();
    std::vector<double> integrand(u.size());
    for (std::size_t j = 0; j < integrand.size(); ++j) integrand[j] = phi(x[j]) * u[j] * u[j];
    return integrate(u.grid(), integrand);
}

RunResult run(const SolutionState& initial, const ModelSpec& model, const StepPolicy& policy,
              const StopSpec& stop, const RunOptions& options) {
    model.validate();
    policy.validate();
    if (!initial.u.same_grid(initial.v)) {
        throw std::invalid_argument("u and v live on different grids");
    }
    if (model.nu > 0.0 && !initial.u.grid().periodic()) {
        throw std::invalid_argument("viscous runs require a periodic grid");
    }
    if (!std::isfinite(stop.max_time) && !std::isfinite(stop.max_sup)) {
        throw std::invalid_argument("stop spec needs a finite max_time or max_sup");
    }
    if (options.record_every == 0) throw std::invalid_argument("record_every must be >= 1");

    RunResult result;
    result.model = model;

    std::vector<double> sup_thresholds = options.snapshot_sup_thresholds;
    std::vector<double> time_marks = options.snapshot_times;
    std::sort(sup_thresholds.begin(), sup_thresholds.end());
    std::sort(time_marks.begin(), time_marks.end());
    std::size_t next_sup = 0;
    std::size_t next_time = 0;

    auto capture = [&](const SolutionState& s, double sup_u) {
        while (next_sup < sup_thresholds.size() && sup_u >= sup_thresholds[next_sup]) {
            result.snapshots.push_back({"sup", sup_thresholds[next_sup], s});
            ++next_sup;
        }
        while (next_time < time_marks.size() && s.t >= time_marks[next_time]) {
            result.snapshots.push_back({"time", time_marks[next_time], s});
            ++next_time;
        }
    };

    auto make_record = [&](const SolutionState& s, const NormRecord* prev) {
        NormRecord r = norms(s, prev);
        if (options.monitor_weight) r.weighted_mass = weighted_mass(s.u, *options.monitor_weight);
        return r;
    };

    SolutionState state = initial;
    NormRecord last = make_record(state, nullptr);
    result.norm_history.push_back(last);
    capture(state, last.sup_u);

    // Running BKM integral, advanced every step even when records are sparse.
    double bkm_integral = 0.0;
    double bkm_integrand = last.bkm_integrand;
    double sup_u = last.sup_u;
    double dt = policy.step_size(sup_u);
    bool last_recorded = true;
    std::size_t steps = 0;

    const double time_eps = 1e-13;
    for (;;) {
        if (std::isfinite(stop.max_time) &&
            state.t >= stop.max_time - time_eps * std::max(1.0, std::abs(stop.max_time))) {
            result.stop_reason = StopReason::MaxTime;
            break;
        }
        if (sup_u >= stop.max_sup) {
            result.stop_reason = StopReason::SupNormThreshold;
            break;
        }
        if (steps % policy.recompute_every == 0) dt = policy.step_size(sup_u);
        if (dt < policy.dt_floor) {
            result.stop_reason = StopReason::DtFloor;
            break;
        }
        const double dt_step =
            std::isfinite(stop.max_time) ? std::min(dt, stop.max_time - state.t) : dt;
        SolutionState next = advance(state, model, dt_step);
        if (!next.u.all_finite() || !next.v.all_finite()) {
            result.stop_reason = StopReason::NonFinite;
            break;
        }
        state = std::move(next);
        ++steps;

        const double new_sup_u = peak_abs(state.u);
        const double new_integrand = new_sup_u + peak_abs(state.v);
        bkm_integral += 0.5 * dt_step * (bkm_integrand + new_integrand);
        bkm_integrand = new_integrand;
        sup_u = new_sup_u;

        last_recorded = steps % options.record_every == 0;
        if (last_recorded) {
            NormRecord r = make_record(state, &last);
            r.dt = dt_step;
            r.bkm_integral = bkm_integral;
            result.norm_history.push_back(r);
            last = r;
        }
        capture(state, sup_u);
    }
    if (!last_recorded) {
        NormRecord r = make_record(state, &last);
        r.bkm_integral = bkm_integral;
        result.norm_history.push_back(r);
    }
    result.steps_taken = steps;
    result.final_state = std::move(state);
    return result;
}

}  // namespace nonlocal
