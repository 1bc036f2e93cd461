#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "nonlocal/analysis.hpp"
#include "nonlocal/field.hpp"
#include "nonlocal/integrator.hpp"

namespace nonlocal {

/// I(x) = int_0^x dy / sqrt(y^3 + 1), x = +inf allowed. Absolute error < 1e-10.
/// Throws std::invalid_argument for x < 0 or NaN.
double incomplete_blowup_integral(double x);

/// I(+inf) = 2.80436...
double blowup_integral_infinity();

enum class CertificateKind {
    CompactLine,  // compact data on the line, phi(x) = x - a
    Periodic,     // compact data inside one period
    Clm,          // u_t = u H u with nonnegative compact data
};

std::string to_string(CertificateKind kind);
CertificateKind certificate_kind_from_string(const std::string& name);

/// Finite-time blow-up certificate for u_t = 2uv, v_t = H(u^2) (or CLM).
struct BlowupCertificate {
    CertificateKind kind = CertificateKind::CompactLine;
    /// 4 int phi u0^2 v0 for the coupled system; int phi u0 for CLM.
    double C_functional = 0.0;
    double support_lo = 0.0;
    double support_hi = 0.0;
    /// Upper bound on the blow-up time; +inf when not applicable.
    double T_star = std::numeric_limits<double>::infinity();
    double I_infty = 0.0;
    bool applicable = false;
    std::string note;

    double support_length() const { return support_hi - support_lo; }
};

/// Computes the certificate with phi(x) = x - a over the support [a, b].
/// The support defaults to the grid's support interval; periodic grids need
/// it explicitly. Requires u0 to be compact-support tagged. A nonpositive
/// functional gives an inapplicable certificate. Throws std::invalid_argument
/// for untagged data, u0 not vanishing outside [a, b], or b - a >= P/2 on a
/// periodic grid of period P.
BlowupCertificate blowup_certificate(const Field& u0, const Field& v0, CertificateKind kind,
                                     std::optional<std::pair<double, double>> support = {});

struct BoundReport {
    bool applicable = false;
    double fitted_T = std::numeric_limits<double>::quiet_NaN();
    double T_star = std::numeric_limits<double>::quiet_NaN();
    bool time_bound_holds = false;
    /// F(0) = int phi u0^2 and its numerical time derivative at t = 0.
    double F0 = std::numeric_limits<double>::quiet_NaN();
    double Ft0 = std::numeric_limits<double>::quiet_NaN();
    /// min over checked records of F_t / sqrt(k (F^3 - F0^3) + C^2) - 1.
    double worst_margin = std::numeric_limits<double>::infinity();
    std::size_t checked_points = 0;
    bool inequality_holds = false;
    bool holds() const { return !applicable || (time_bound_holds && inequality_holds); }
};

/// Relative tolerance of the differential-inequality check.
inline constexpr double kBoundTolerance = 1e-3;

/// Checks a run of u_t = 2uv, v_t = H(u^2) against the certificate:
/// fitted T <= T_star, and along the recorded weighted mass F = int phi u^2,
///   F_t >= sqrt((4 / (3 pi (b-a)^2)) (F^3 - F(0)^3) + C^2) (1 - tol),
/// with F_t from centered differences in t. The run must have been made
/// with the certificate's weight monitored. Throws std::invalid_argument
/// unless the model is the full system with alpha = 2, beta = 1.
BoundReport verify_bound(const RunResult& run, const BlowupCertificate& cert,
                         const FitWindow& window = {});
/// Same, with an externally fitted blow-up time.
BoundReport verify_bound(const RunResult& run, const BlowupCertificate& cert, double fitted_T);

struct RegularityCertificate {
    double delta = 0.0;
    double v0x_l2 = 0.0;
    double u0x_l2_sq = 0.0;
    double lhs = 0.0;
    bool smallness = false;
    bool v0_negative_enough = false;
    bool satisfied = false;
    /// Initial data norms entering the a priori bound on ||v||_{H^1}.
    double v0_l2 = 0.0;
    double v_h1_bound = 0.0;
};

/// delta^{1/2} (||v0x|| + delta^{1/2} ||u0x||^2 / 3).
double regularity_lhs(double delta, double v0x_l2, double u0x_l2_sq);

/// Evaluates the smallness condition lhs < 1/4 and v0 <= -3 on the support
/// of u0 (the grid's support interval).
RegularityCertificate check_global_regularity(const Field& u0, const Field& v0);

struct DecayReport {
    double sup_rate = 0.0;  // slope of log ||u||_inf over the tail
    double h1_rate = 0.0;   // slope of log ||u||_{H^1} over the tail
    double max_h1_v = 0.0;
    double h1_v_bound = 0.0;
    std::size_t samples = 0;
    bool decay_holds = false;  // sup_rate <= -2.9
    bool bound_holds = false;  // max ||v||_{H^1} <= bound (1 + 1e-3)
    bool holds() const { return decay_holds && bound_holds; }
};

/// Fits the decay rates over the second half of the run and checks
/// ||v||_{H^1} against the certificate's bound. Throws std::invalid_argument
/// if the certificate is not satisfied, the model is not the full system
/// with alpha = 2, beta = 1, nu = 0, or fewer than 10 tail samples exist.
DecayReport verify_decay(const RunResult& run, const RegularityCertificate& cert);

}  // namespace nonlocal
