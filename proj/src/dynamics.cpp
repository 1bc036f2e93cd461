#include "nonlocal/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "nonlocal/calculus.hpp"
#include "nonlocal/hilbert.hpp"

namespace nonlocal {

std::string to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::Full: return "full";
        case ModelVariant::SignFlipped: return "sign-flipped";
        case ModelVariant::Clm: return "clm";
    }
    return "full";
}

ModelVariant model_variant_from_string(const std::string& name) {
    if (name == "full") return ModelVariant::Full;
    if (name == "sign-flipped") return ModelVariant::SignFlipped;
    if (name == "clm") return ModelVariant::Clm;
    throw std::invalid_argument("unknown model variant '" + name + "'");
}

std::string to_string(ClmForm f) { return f == ClmForm::Squared ? "squared" : "vorticity"; }

ClmForm clm_form_from_string(const std::string& name) {
    if (name == "vorticity") return ClmForm::Vorticity;
    if (name == "squared") return ClmForm::Squared;
    throw std::invalid_argument("unknown CLM form '" + name + "'");
}

void ModelSpec::validate() const {
    if (!(nu >= 0.0)) throw std::invalid_argument("viscosity must be nonnegative");
    if (variant != ModelVariant::Clm && !(alpha * beta > 0.0)) {
        throw std::invalid_argument("model requires alpha * beta > 0");
    }
}

Field clm_rhs(const Field& w, double coefficient) {
    const Field hw = hilbert(w);
    std::vector<double> out(w.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = coefficient * w[j] * hw[j];
    return Field(w.grid_ptr(), std::move(out), w.compact_support());
}

Tendency rhs(const SolutionState& state, const ModelSpec& model, bool include_viscous) {
    const Field& u = state.u;
    const Field& v = state.v;
    if (!u.same_grid(v)) throw std::invalid_argument("u and v live on different grids");
    const std::size_t n = u.size();

    Tendency out{Field(u.grid_ptr(), u.compact_support()), Field(v.grid_ptr())};
    if (model.variant == ModelVariant::Clm) {
        out.du_dt = clm_rhs(u, model.clm_coefficient());
    } else {
        Field u_sq(u.grid_ptr(), u.compact_support());
        auto& sq = u_sq.values_mut();
        auto& du = out.du_dt.values_mut();
        for (std::size_t j = 0; j < n; ++j) {
            sq[j] = u[j] * u[j];
            du[j] = model.alpha * u[j] * v[j];
        }
        const Field h_sq = hilbert(u_sq);
        const double sign = model.variant == ModelVariant::SignFlipped ? -1.0 : 1.0;
        auto& dv = out.dv_dt.values_mut();
        for (std::size_t j = 0; j < n; ++j) dv[j] = sign * model.beta * h_sq[j];
    }

    if (include_viscous && model.nu > 0.0) {
        if (!u.grid().periodic()) {
            throw std::invalid_argument("viscous terms are only supported on periodic grids");
        }
        const Field uxx = spectral_second_derivative(u);
        const Field vxx = spectral_second_derivative(v);
        auto& du = out.du_dt.values_mut();
        auto& dv = out.dv_dt.values_mut();
        for (std::size_t j = 0; j < n; ++j) {
            du[j] += model.nu * uxx[j];
            if (model.variant != ModelVariant::Clm) dv[j] += model.nu * vxx[j];
        }
    }
    return out;
}

ScalingParams normalize_scaling(const ModelSpec& model) {
    if (!(model.alpha * model.beta > 0.0)) {
        throw std::invalid_argument("scaling normalization requires alpha * beta > 0");
    }
    ScalingParams p;
    p.gamma = std::sqrt(model.alpha * model.beta / 2.0);
    p.mu = std::copysign(std::sqrt(2.0 * model.beta / model.alpha), model.alpha);
    return p;
}

}  // namespace nonlocal
