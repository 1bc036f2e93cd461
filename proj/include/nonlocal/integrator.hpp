#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nonlocal/dynamics.hpp"
#include "nonlocal/hilbert.hpp"
#include "nonlocal/norms.hpp"

namespace nonlocal {

/// Adaptive step law dt = min(dt_max, c_dt / ||u||_inf).
struct StepPolicy {
    double c_dt = 1e-3;
    double dt_max = 1e-3;
    double dt_floor = 1e-14;
    std::size_t recompute_every = 1;

    void validate() const;
    double step_size(double sup_u) const;
};

/// A run stops at the first of: t reaching max_time, ||u||_inf reaching
/// max_sup, the step falling below the policy floor, or a non-finite value.
struct StopSpec {
    double max_time = std::numeric_limits<double>::infinity();
    double max_sup = std::numeric_limits<double>::infinity();
};

struct RunOptions {
    /// Capture the first state whose ||u||_inf reaches each threshold.
    std::vector<double> snapshot_sup_thresholds;
    /// Capture the first state with t >= each time.
    std::vector<double> snapshot_times;
    /// Record norms every k steps (the final state is always recorded).
    std::size_t record_every = 1;
    /// When set, every record carries int phi u^2 dx.
    std::optional<TestWeight> monitor_weight;
};

enum class StopReason { MaxTime, SupNormThreshold, DtFloor, NonFinite };

std::string to_string(StopReason r);

struct Snapshot {
    std::string trigger;  // "sup" or "time"
    double trigger_value = 0.0;
    SolutionState state;
};

struct RunResult {
    ModelSpec model;
    std::vector<NormRecord> norm_history;
    std::vector<Snapshot> snapshots;
    StopReason stop_reason = StopReason::MaxTime;
    std::size_t steps_taken = 0;
    SolutionState final_state;
};

using NonlinearFn = std::function<Tendency(const SolutionState&)>;

/// Classical four-stage Runge-Kutta step of the full right-hand side
/// (viscous terms included explicitly when nu > 0 on a periodic grid).
SolutionState rk4_step(const SolutionState& state, const ModelSpec& model, double dt);

/// RK4 applied to e^{nu k^2 (t - t_n)} (u_hat, v_hat): the heat semigroup is
/// integrated exactly and only the nonlinear terms are sampled. Requires a
/// periodic grid and nu > 0.
SolutionState integrating_factor_rk4_step(const SolutionState& state, const ModelSpec& model,
                                          double dt);
/// Same, with the nonlinear terms supplied by the caller.
SolutionState integrating_factor_rk4_step(const SolutionState& state, const ModelSpec& model,
                                          double dt, const NonlinearFn& nonlinear);

/// Picks the integrating-factor stepper for viscous periodic runs, RK4 otherwise.
SolutionState advance(const SolutionState& state, const ModelSpec& model, double dt);

/// Adaptive run loop. Throws std::invalid_argument for an invalid policy,
/// a viscous line-grid run, or a stop spec without any finite limit.
RunResult run(const SolutionState& initial, const ModelSpec& model, const StepPolicy& policy,
              const StopSpec& stop, const RunOptions& options = {});

/// int phi u^2 dx.
double weighted_mass(const Field& u, const TestWeight& phi);

}  // namespace nonlocal
