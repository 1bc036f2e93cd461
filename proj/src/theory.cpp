#include "nonlocal/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nonlocal/calculus.hpp"

namespace nonlocal {
namespace {

using boost::math::quadrature::gauss_kronrod;

double kronrod(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    return gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-14);
}

// After y = s^{-2}, int_1^x dy/sqrt(y^3+1) = int_{x^{-1/2}}^1 2/sqrt(1+s^6) ds.
double tail_integrand(double s) { return 2.0 / std::sqrt(1.0 + std::pow(s, 6)); }
double head_integrand(double y) { return 1.0 / std::sqrt(y * y * y + 1.0); }

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

void require_canonical(const ModelSpec& model, const char* what) {
    if (model.variant != ModelVariant::Full || !close(model.alpha, 2.0) || !close(model.beta, 1.0)) {
        throw std::invalid_argument(std::string(what) +
                                    " needs the full system with alpha = 2, beta = 1");
    }
}


double ls_slope(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

}  // namespace

double incomplete_blowup_integral(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw std::invalid_argument("blow-up integral needs x >= 0");
    }
    if (x <= 1.0) return kronrod(head_integrand, 0.0, x);
    const double head = kronrod(head_integrand, 0.0, 1.0);
    const double s_lo = std::isinf(x) ? 0.0 : 1.0 / std::sqrt(x);
    return head + kronrod(tail_integrand, s_lo, 1.0);
}

double blowup_integral_infinity() {
    static const double value = incomplete_blowup_integral(std::numeric_limits<double>::infinity());
    return value;
}

std::string to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::CompactLine: return "compact-line";
        case CertificateKind::Periodic: return "periodic";
        case CertificateKind::Clm: return "clm";
    }
    return "unknown";
}

CertificateKind certificate_kind_from_string(const std::string& name) {
    if (name == "compact-line") return CertificateKind::CompactLine;
    if (name == "periodic") return CertificateKind::Periodic;
    if (name == "clm") return CertificateKind::Clm;
    throw std::invalid_argument("unknown certificate kind: " + name);
}

BlowupCertificate blowup_certificate(const Field& u0, const Field& v0, CertificateKind kind,
                                     std::optional<std::pair<double, double>> support) {
    if (!u0.compact_support()) {
        throw std::invalid_argument("blow-up certificate needs compact-support tagged u0");
    }
    if (!u0.same_grid(v0)) throw std::invalid_argument("u0 and v0 live on different grids");
    const Grid& g = u0.grid();
    if (!support) {
        if (g.periodic()) throw std::invalid_argument("periodic certificate needs a support");
        support = std::make_pair(g.support_lo(), g.support_hi());
    }
    const auto [a, b] = *support;
    if (!(b > a)) throw std::invalid_argument("empty support interval");
    if (g.periodic() && !(b - a < 0.5 * g.period())) {
        throw std::invalid_argument("support must be shorter than half a period");
    }

    const auto u = u0.values();
    const auto v = v0.values();
    const double scale = std::max(u0.max_abs(), 1e-300);
    std::vector<double> integrand(u.size(), 0.0);
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = g.point(j);
        if (x < a || x > b) {
            if (std::abs(u[j]) > 1e-12 * scale) {
                throw std::invalid_argument("u0 does not vanish outside the support");
            }
            continue;
        }
        const double phi = x - a;
        integrand[j] = kind == CertificateKind::Clm ? phi * u[j] : 4.0 * phi * u[j] * u[j] * v[j];
    }

    BlowupCertificate cert;
    cert.kind = kind;
    cert.support_lo = a;
    cert.support_hi = b;
    cert.C_functional = integrate(g, integrand);
    cert.I_infty = blowup_integral_infinity();
    const double len = b - a;

    if (kind == CertificateKind::Clm) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (u[j] < 0.0) {
                cert.note = "u0 takes negative values";
                return cert;
            }
        }
    }
    if (!(cert.C_functional > 0.0)) {
        cert.note = "functional is not positive";
        return cert;
    }
    cert.applicable = true;
    switch (kind) {
        case CertificateKind::CompactLine:
            cert.T_star = std::cbrt(3.0 * std::numbers::pi * len * len / (4.0 * cert.C_functional)) *
                          cert.I_infty;
            break;
        case CertificateKind::Periodic: {
            const double c = std::cos(std::numbers::pi * len / g.period());
            cert.T_star = std::cbrt(3.0 * std::numbers::pi * len * len / (4.0 * cert.C_functional * c)) *
                          cert.I_infty;
            break;
        }
        case CertificateKind::Clm:
            cert.T_star = 2.0 * std::numbers::pi * len * len / cert.C_functional;
            break;
    }
    return cert;
}

BoundReport verify_bound(const RunResult& run, const BlowupCertificate& cert,
                         const FitWindow& window) {
    require_canonical(run.model, "verify_bound");
    if (!cert.applicable) return verify_bound(run, cert, std::numeric_limits<double>::quiet_NaN());
    return verify_bound(run, cert, fit_blowup(run.norm_history, window).T);
}

BoundReport verify_bound(const RunResult& run, const BlowupCertificate& cert, double fitted_T) {
    require_canonical(run.model, "verify_bound");
    if (cert.kind == CertificateKind::Clm) {
        throw std::invalid_argument("verify_bound checks the coupled system, not CLM");
    }
    BoundReport report;
    report.T_star = cert.T_star;
    report.fitted_T = fitted_T;
    if (!cert.applicable) return report;
    report.applicable = true;
    report.time_bound_holds = fitted_T <= cert.T_star;

    std::vector<double> t, F;
    for (const NormRecord& r : run.norm_history) {
        if (std::isnan(r.weighted_mass)) {
            throw std::invalid_argument("run did not record the weighted mass");
        }
        if (!t.empty() && !(r.t > t.back())) continue;
        t.push_back(r.t);
        F.push_back(r.weighted_mass);
    }
    if (t.size() < 4) throw std::invalid_argument("too few records to check the inequality");

    const double len = cert.support_length();
    const double k = 4.0 / (3.0 * std::numbers::pi * len * len);
    const double C = cert.C_functional;
    report.F0 = F[0];
    auto margin = [&](double Ft, double Fv) {
        const double bound = std::sqrt(k * (Fv * Fv * Fv - F[0] * F[0] * F[0]) + C * C);
        return Ft / bound - 1.0;
    };

    {
        const double h1 = t[1] - t[0];
        const double h2 = t[2] - t[1];
        report.Ft0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * F[0] + (h1 + h2) / (h1 * h2) * F[1] -
                     h1 / (h2 * (h1 + h2)) * F[2];
        report.worst_margin = margin(report.Ft0, F[0]);
        report.checked_points = 1;
    }
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const double h1 = t[i] - t[i - 1];
        const double h2 = t[i + 1] - t[i];
        const double Ft = -h2 / (h1 * (h1 + h2)) * F[i - 1] + (h2 - h1) / (h1 * h2) * F[i] +
                          h1 / (h2 * (h1 + h2)) * F[i + 1];
        report.worst_margin = std::min(report.worst_margin, margin(Ft, F[i]));
        ++report.checked_points;
    }
    report.inequality_holds = report.worst_margin >= -kBoundTolerance;
    return report;
}

double regularity_lhs(double delta, double v0x_l2, double u0x_l2_sq) {
    const double s = std::sqrt(delta);
    return s * (v0x_l2 + s * u0x_l2_sq / 3.0);
}

RegularityCertificate check_global_regularity(const Field& u0, const Field& v0) {
    const Grid& g = u0.grid();
    RegularityCertificate cert;
    cert.delta = g.support_hi() - g.support_lo();
    cert.v0x_l2 = l2_norm(derivative(v0));
    const double ux = l2_norm(derivative(u0));
    cert.u0x_l2_sq = ux * ux;
    cert.lhs = regularity_lhs(cert.delta, cert.v0x_l2, cert.u0x_l2_sq);
    cert.smallness = cert.lhs < 0.25;
    cert.v0_negative_enough = true;
    const auto v = v0.values();
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (g.in_support(g.point(j)) && v[j] > -3.0) cert.v0_negative_enough = false;
    }
    cert.satisfied = cert.smallness && cert.v0_negative_enough;
    cert.v0_l2 = l2_norm(v0);
    cert.v_h1_bound = cert.v0_l2 + cert.delta * cert.u0x_l2_sq / 6.0 + cert.v0x_l2 +
                      std::sqrt(cert.delta) * cert.u0x_l2_sq / 3.0;
    return cert;
}

DecayReport verify_decay(const RunResult& run, const RegularityCertificate& cert) {
    if (!cert.satisfied) throw std::invalid_argument("regularity certificate is not satisfied");
    require_canonical(run.model, "verify_decay");
    if (run.model.nu != 0.0) throw std::invalid_argument("verify_decay needs nu = 0");
    if (run.norm_history.empty()) throw std::invalid_argument("empty run history");

    DecayReport report;
    report.h1_v_bound = cert.v_h1_bound;
    const double t_half = 0.5 * run.norm_history.back().t;
    std::vector<double> t, log_sup, log_h1;
    for (const NormRecord& r : run.norm_history) {
        report.max_h1_v = std::max(report.max_h1_v, r.h1_v);
        if (r.t >= t_half && r.sup_u > 0.0 && r.h1_u > 0.0) {
            t.push_back(r.t);
            log_sup.push_back(std::log(r.sup_u));
            log_h1.push_back(std::log(r.h1_u));
        }
    }
    if (t.size() < 10) throw std::invalid_argument("too few tail samples to fit a decay rate");
    report.samples = t.size();
    report.sup_rate = ls_slope(t, log_sup);
    report.h1_rate = ls_slope(t, log_h1);
    report.decay_holds = report.sup_rate <= -2.9;
    report.bound_holds = report.max_h1_v <= report.h1_v_bound * (1.0 + 1e-3);
    return report;
}

}  // namespace nonlocal
