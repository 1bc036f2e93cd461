#pragma once

#include <string>

#include "nonlocal/field.hpp"

namespace nonlocal {

enum class ModelVariant {
    Full,         // u_t = alpha u v,  v_t =  beta H(u^2)
    SignFlipped,  // u_t = alpha u v,  v_t = -beta H(u^2)
    Clm,          // u_t = c u H(u); v is carried along unchanged
};

/// Coefficient convention for the CLM variant.
enum class ClmForm {
    Vorticity,  // u_t = u H u
    Squared,    // w_t = 4 w H w, the reduction with w = u^2
};

std::string to_string(ModelVariant v);
ModelVariant model_variant_from_string(const std::string& name);
std::string to_string(ClmForm f);
ClmForm clm_form_from_string(const std::string& name);

struct ModelSpec {
    double alpha = 1.0;
    double beta = 1.0;
    double nu = 0.0;
    ModelVariant variant = ModelVariant::Full;
    ClmForm clm_form = ClmForm::Vorticity;

    /// Throws std::invalid_argument when nu < 0 or (for the coupled
    /// variants) alpha*beta <= 0.
    void validate() const;
    double clm_coefficient() const { return clm_form == ClmForm::Squared ? 4.0 : 1.0; }
};

/// Map u(x,t) = U(x, gamma t), v(x,t) = mu V(x, gamma t) between the
/// (alpha, beta) system and the canonical (2, 1) system.
struct ScalingParams {
    double gamma = 1.0;
    double mu = 1.0;
};

struct Tendency {
    Field du_dt;
    Field dv_dt;
};

/// Right-hand side of the model. Viscous terms nu*f_xx are added only when
/// include_viscous is set (periodic grids); the integrating-factor stepper
/// absorbs them otherwise. Throws on a u/v grid mismatch.
Tendency rhs(const SolutionState& state, const ModelSpec& model, bool include_viscous = false);

/// gamma = sqrt(alpha beta / 2), mu = sgn(alpha) sqrt(2 beta / alpha).
/// Throws std::invalid_argument unless alpha*beta > 0.
ScalingParams normalize_scaling(const ModelSpec& model);

/// c w H(w).
Field clm_rhs(const Field& w, double coefficient = 1.0);

}  // namespace nonlocal
