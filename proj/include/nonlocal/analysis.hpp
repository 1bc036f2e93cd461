#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "nonlocal/field.hpp"
#include "nonlocal/norms.hpp"

namespace nonlocal {

/// Selects the samples of a norm history used by the blow-up fits.
///
/// By default the window covers ||u||_inf in [100 * initial, +inf) and drops
/// the final five records, which sit at the edge of what the grid resolves.
struct FitWindow {
    double sup_lo = std::numeric_limits<double>::quiet_NaN();  // NaN: 100 * initial sup
    double sup_hi = std::numeric_limits<double>::infinity();
    std::size_t exclude_last = 5;

    /// Samples with ||u||_inf within `decades` decades of the largest value.
    static FitWindow final_decades(std::span<const NormRecord> history, double decades = 1.0,
                                   std::size_t exclude_last = 0);
};

/// ||u||_inf = C / (T - t)^alpha_exp, fitted on 1/||u||_inf with alpha_exp = 1.
struct BlowupFit {
    double T = 0.0;
    double C = 0.0;
    double alpha_exp = 1.0;
    double t_start = 0.0;
    double t_end = 0.0;
    /// Max relative deviation of 1/||u||_inf from the fitted line in the window.
    double residual = 0.0;
    std::size_t samples = 0;
};

/// Least squares line through (t, 1/||u||_inf): slope s < 0 and intercept q
/// give T = -q/s and C = -1/s. Throws std::invalid_argument for fewer than
/// 10 samples or a nonnegative slope.
BlowupFit fit_blowup(std::span<const NormRecord> history, const FitWindow& window = {});

/// Free-exponent diagnostic: ||u||_inf = C/(T - t)^alpha with T chosen to
/// minimise the log-log regression residual.
struct PowerLawFit {
    double T = 0.0;
    double C = 0.0;
    double alpha = 0.0;
    double rms_log_residual = 0.0;
    std::size_t samples = 0;
};

PowerLawFit fit_power_law(std::span<const NormRecord> history, const FitWindow& window = {});

/// Same fit on raw (t, y) samples, y growing like C/(T - t)^alpha.
PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> y);

/// Rescaled snapshot near blow-up,
///   xi = (x - x0) / L,  L = (T - t)^{1/2} ln(1/(T - t))^{1/2},
///   U = (T - t) u,  V = (T - t) v,
/// sampled on a uniform xi grid.
struct SelfSimilarFrame {
    double t = 0.0;
    double T = 0.0;
    double x0 = 0.0;
    double length_scale = 0.0;
    std::vector<double> xi;
    std::vector<double> U;
    std::vector<double> V;
    double lambda_est = std::numeric_limits<double>::quiet_NaN();
    double period = 0.0;  // grid period, 0 on line grids

    double U_at_origin() const;
};

struct ProfileOptions {
    double xi_max = 4.0;
    std::size_t xi_points = 801;  // odd, so xi = 0 is a sample
};

/// Locates x0 by a parabola through the three samples around the discrete
/// maximum of |u| and resamples U, V with spectral (periodic) or cubic
/// (line) interpolation. Throws std::invalid_argument when fit.T <= t, when
/// T - t >= 1 (the logarithm changes sign), or when the maximum sits on the
/// boundary of a line grid; std::out_of_range when the xi window leaves a
/// line domain.
SelfSimilarFrame extract_profile(const SolutionState& state, const BlowupFit& fit,
                                 const ProfileOptions& options = {});

/// Same, with the blow-up time given directly.
SelfSimilarFrame extract_profile(const SolutionState& state, double blowup_time,
                                 const ProfileOptions& options = {});

struct LambdaEstimate {
    double lambda = 0.0;
    double spread = 0.0;  // max deviation of the averaged estimates from lambda
    std::vector<double> interval_estimates;
};

/// lambda = lim (T - t)^{1/2} dx0/dt. Between consecutive frames the
/// derivative is taken with respect to -2 (T - t)^{1/2}, which is exact when
/// x0 = X - 2 lambda (T - t)^{1/2}; the last three interval estimates are
/// averaged. Frames must share T. Throws for fewer than 3 frames.
LambdaEstimate estimate_lambda(std::span<const SelfSimilarFrame> frames);

struct CollapseResult {
    double scale = 1.0;
    double mismatch = 0.0;  // sup |U_other(s xi) - U_ref(xi)| / sup |U_ref| on the overlap
};

/// Finds s minimising the sup-norm mismatch of U_other(s xi) against
/// U_ref(xi) over the overlap of both xi ranges, optionally restricted to
/// |xi| <= xi_window. Throws std::invalid_argument if the ranges cannot overlap.
CollapseResult collapse_profiles(const SelfSimilarFrame& reference, const SelfSimilarFrame& other,
                                 double xi_window = std::numeric_limits<double>::infinity());

enum class BkmClass { BoundedSoFar, SuperlinearGrowth };

std::string to_string(BkmClass c);

struct BkmReport {
    double integral = 0.0;
    double final_integrand = 0.0;
    /// d(integral)/dt at the end of the history, i.e. the last integrand.
    double growth_rate = 0.0;
    BkmClass classification = BkmClass::BoundedSoFar;
    /// Blow-up time of the tail fit integrand = c/(T - t); NaN when not fitted.
    double tail_T = std::numeric_limits<double>::quiet_NaN();
    double tail_c = std::numeric_limits<double>::quiet_NaN();
    double tail_residual = std::numeric_limits<double>::quiet_NaN();
};

/// Monitors int_0^t (||u||_inf + ||v||_inf) dt. A history whose integrand
/// grew by at least two decades and whose last decade fits c/(T - t) within
/// 5% is classified as superlinear growth (a divergent integral).
BkmReport bkm_monitor(std::span<const NormRecord> history);

}  // namespace nonlocal
