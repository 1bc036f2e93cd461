#pragma once

#include <limits>

#include "nonlocal/field.hpp"

namespace nonlocal {

/// Per-step diagnostics of a solution state.
struct NormRecord {
    double t = 0.0;
    double dt = 0.0;  // size of the step that produced this state (0 at start)
    double sup_u = 0.0;
    double sup_v = 0.0;
    double l2_u = 0.0;
    double l2_v = 0.0;
    double h1_u = 0.0;
    double h1_v = 0.0;
    double bkm_integrand = 0.0;  // sup_u + sup_v
    double bkm_integral = 0.0;   // trapezoidal running integral of bkm_integrand
    /// Optional weighted mass int phi u^2 dx, NaN when no weight is monitored.
    double weighted_mass = std::numeric_limits<double>::quiet_NaN();
};

/// Norms of a state. When `previous` is given, the running integral is
/// advanced from it by the trapezoidal rule in t; otherwise it starts at 0.
NormRecord norms(const SolutionState& state, const NormRecord* previous = nullptr);

}  // namespace nonlocal
