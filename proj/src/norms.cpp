#include "nonlocal/norms.hpp"

#include "nonlocal/calculus.hpp"

namespace nonlocal {

NormRecord norms(const SolutionState& state, const NormRecord* previous) {
    NormRecord r;
    r.t = state.t;
    r.sup_u = peak_abs(state.u);
    r.sup_v = peak_abs(state.v);
    r.l2_u = l2_norm(state.u);
    r.l2_v = l2_norm(state.v);
    r.h1_u = h1_norm(state.u);
    r.h1_v = h1_norm(state.v);
    r.bkm_integrand = r.sup_u + r.sup_v;
    if (previous != nullptr) {
        r.dt = state.t - previous->t;
        r.bkm_integral =
            previous->bkm_integral + 0.5 * r.dt * (previous->bkm_integrand + r.bkm_integrand);
    }
    return r;
}

}  // namespace nonlocal
