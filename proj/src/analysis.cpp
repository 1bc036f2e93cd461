#include "nonlocal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nonlocal {
namespace {

struct Line {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares y = intercept + slope * x, centered for conditioning.
Line least_squares(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("degenerate fit window");
    Line l;
    l.slope = sxy / sxx;
    l.intercept = my - l.slope * mx;
    return l;
}

struct Samples {
    std::vector<double> t;
    std::vector<double> sup;
};

Samples select(std::span<const NormRecord> history, const FitWindow& window) {
    Samples s;
    if (history.empty()) return s;
    const double lo = std::isnan(window.sup_lo) ? 100.0 * history.front().sup_u : window.sup_lo;
    const std::size_t end =
        history.size() > window.exclude_last ? history.size() - window.exclude_last : 0;
    for (std::size_t i = 0; i < end; ++i) {
        const NormRecord& r = history[i];
        if (r.sup_u >= lo && r.sup_u <= window.sup_hi && r.sup_u > 0.0) {
            s.t.push_back(r.t);
            s.sup.push_back(r.sup_u);
        }
    }
    return s;
}

// Uniform-grid cubic Lagrange interpolation of samples y_k at x0 + k*dx.
double cubic_uniform(std::span<const double> y, double x0, double dx, double x) {
    const std::size_t n = y.size();
    const double s = (x - x0) / dx;
    long j = static_cast<long>(std::floor(s));
    j = std::clamp<long>(j, 1, static_cast<long>(n) - 3);
    const double p = s - static_cast<double>(j);
    const double y0 = y[j - 1], y1 = y[j], y2 = y[j + 1], y3 = y[j + 2];
    return -p * (p - 1.0) * (p - 2.0) / 6.0 * y0 + (p + 1.0) * (p - 1.0) * (p - 2.0) / 2.0 * y1 -
           (p + 1.0) * p * (p - 2.0) / 2.0 * y2 + (p + 1.0) * p * (p - 1.0) / 6.0 * y3;
}

// Trigonometric interpolant of a periodic field, evaluated pointwise.
class TrigInterpolant {
public:
    explicit TrigInterpolant(const Field& f)
        : coeffs_(f.spectrum()), n_(f.size()), x_lo_(f.grid().x_lo()),
          k1_(f.grid().wavenumber(1)) {}

    double operator()(double x) const {
        const double theta = k1_ * (x - x_lo_);
        const std::complex<double> z = std::polar(1.0, theta);
        std::complex<double> w = z;
        double sum = coeffs_[0].real();
        const std::size_t half = n_ / 2;
        for (std::size_t m = 1; m < half; ++m) {
            sum += 2.0 * (coeffs_[m] * w).real();
            w *= z;
            // Renormalise occasionally to keep |w| = 1.
            if ((m & 255) == 0) w = std::polar(1.0, theta * static_cast<double>(m + 1));
        }
        sum += coeffs_[half].real() * std::cos(theta * static_cast<double>(half));
        return sum / static_cast<double>(n_);
    }

private:
    fft::Spectrum coeffs_;
    std::size_t n_;
    double x_lo_;
    double k1_;
};

}  // namespace

FitWindow FitWindow::final_decades(std::span<const NormRecord> history, double decades,
                                   std::size_t exclude_last) {
    double top = 0.0;
    for (const NormRecord& r : history) top = std::max(top, r.sup_u);
    FitWindow w;
    w.sup_lo = top / std::pow(10.0, decades);
    w.exclude_last = exclude_last;
    return w;
}

BlowupFit fit_blowup(std::span<const NormRecord> history, const FitWindow& window) {
    const Samples s = select(history, window);
    if (s.t.size() < 10) {
        throw std::invalid_argument("blow-up fit needs at least 10 samples in the window, got " +
                                    std::to_string(s.t.size()));
    }
    std::vector<double> inv(s.sup.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / s.sup[i];
    const Line line = least_squares(s.t, inv);
    if (!(line.slope < 0.0)) {
        throw std::invalid_argument("1/||u||_inf is not decreasing in the fit window");
    }
    BlowupFit fit;
    fit.T = -line.intercept / line.slope;
    fit.C = -1.0 / line.slope;
    fit.alpha_exp = 1.0;
    fit.t_start = s.t.front();
    fit.t_end = s.t.back();
    fit.samples = s.t.size();
    for (std::size_t i = 0; i < inv.size(); ++i) {
        const double model = line.intercept + line.slope * s.t[i];
        fit.residual = std::max(fit.residual, std::abs(inv[i] - model) / inv[i]);
    }
    return fit;
}

PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> y) {
    const std::size_t n = t.size();
    if (n < 10 || y.size() != n) {
        throw std::invalid_argument("power-law fit needs at least 10 matching samples");
    }
    const double t_end = *std::max_element(t.begin(), t.end());
    const double t_start = *std::min_element(t.begin(), t.end());
    const double span = t_end - t_start;
    if (!(span > 0.0)) throw std::invalid_argument("degenerate fit window");

    std::vector<double> log_y(n), log_tau(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(y[i] > 0.0)) throw std::invalid_argument("power-law fit needs positive samples");
        log_y[i] = std::log(y[i]);
    }
    auto evaluate = [&](double log_d, Line* out) {
        const double T = t_end + std::exp(log_d);
        for (std::size_t i = 0; i < n; ++i) log_tau[i] = -std::log(T - t[i]);
        const Line l = least_squares(log_tau, log_y);
        double ssr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = log_y[i] - (l.intercept + l.slope * log_tau[i]);
            ssr += r * r;
        }
        if (out != nullptr) *out = l;
        return ssr;
    };

    const double lo = std::log(span * 1e-6);
    const double hi = std::log(span * 1e3);
    const int scan = 600;
    double best_x = lo;
    double best = std::numeric_limits<double>::infinity();
    const double step = (hi - lo) / scan;
    for (int k = 0; k <= scan; ++k) {
        const double x = lo + step * k;
        const double f = evaluate(x, nullptr);
        if (f < best) {
            best = f;
            best_x = x;
        }
    }
    // Golden-section refinement inside the bracketing scan cell.
    double a = std::max(lo, best_x - step);
    double b = std::min(hi, best_x + step);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = evaluate(c, nullptr);
    double fd = evaluate(d, nullptr);
    for (int it = 0; it < 100; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = evaluate(c, nullptr);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = evaluate(d, nullptr);
        }
    }
    double x = 0.5 * (a + b);
    double fx = evaluate(x, nullptr);
    if (best < fx) {
        x = best_x;
        fx = best;
    }
    Line l;
    evaluate(x, &l);
    PowerLawFit fit;
    fit.T = t_end + std::exp(x);
    fit.alpha = l.slope;
    fit.C = std::exp(l.intercept);
    fit.rms_log_residual = std::sqrt(fx / static_cast<double>(n));
    fit.samples = n;
    return fit;
}

PowerLawFit fit_power_law(std::span<const NormRecord> history, const FitWindow& window) {
    const Samples s = select(history, window);
    return fit_power_law(s.t, s.sup);
}

double SelfSimilarFrame::U_at_origin() const {
    if (U.empty()) return 0.0;
    return U[U.size() / 2];
}

SelfSimilarFrame extract_profile(const SolutionState& state, const BlowupFit& fit,
                                 const ProfileOptions& options) {
    return extract_profile(state, fit.T, options);
}

SelfSimilarFrame extract_profile(const SolutionState& state, double blowup_time,
                                 const ProfileOptions& options) {
    const double tau = blowup_time - state.t;
    if (!(tau > 0.0)) throw std::invalid_argument("profile extraction needs T > t");
    if (!(tau < 1.0)) throw std::invalid_argument("profile extraction needs T - t < 1");
    if (options.xi_points < 5 || options.xi_points % 2 == 0) {
        throw std::invalid_argument("xi grid needs an odd number of points (>= 5)");
    }
    const Field& u = state.u;
    const Grid& g = u.grid();
    const std::size_t n = u.size();
    const auto vals = u.values();

    std::size_t imax = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (std::abs(vals[j]) > std::abs(vals[imax])) imax = j;
    }
    if (!g.periodic() && (imax == 0 || imax + 1 == n)) {
        throw std::invalid_argument("maximum of |u| sits on the line-grid boundary");
    }
    const double fm = std::abs(vals[(imax + n - 1) % n]);
    const double f0 = std::abs(vals[imax]);
    const double fp = std::abs(vals[(imax + 1) % n]);
    const double curvature = fm - 2.0 * f0 + fp;
    double offset = curvature < 0.0 ? 0.5 * (fm - fp) / curvature : 0.0;
    offset = std::clamp(offset, -0.5, 0.5);
    double x0 = g.point(imax) + offset * g.spacing();
    if (g.periodic()) {
        x0 = g.x_lo() + std::fmod(x0 - g.x_lo() + g.period(), g.period());
    }

    SelfSimilarFrame frame;
    frame.t = state.t;
    frame.T = blowup_time;
    frame.x0 = x0;
    frame.period = g.periodic() ? g.period() : 0.0;
    frame.length_scale = std::sqrt(tau) * std::sqrt(std::log(1.0 / tau));

    const std::size_t m = options.xi_points;
    const double dxi = 2.0 * options.xi_max / static_cast<double>(m - 1);
    frame.xi.resize(m);
    frame.U.resize(m);
    frame.V.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        frame.xi[k] = -options.xi_max + dxi * static_cast<double>(k);
    }
    frame.xi[m / 2] = 0.0;

    if (g.periodic()) {
        const TrigInterpolant iu(u);
        const TrigInterpolant iv(state.v);
        for (std::size_t k = 0; k < m; ++k) {
            const double x = x0 + frame.xi[k] * frame.length_scale;
            frame.U[k] = tau * iu(x);
            frame.V[k] = tau * iv(x);
        }
    } else {
        const double lo = g.point(1);
        const double hi = g.point(n - 3);
        for (std::size_t k = 0; k < m; ++k) {
            const double x = x0 + frame.xi[k] * frame.length_scale;
            if (x < lo || x > hi) {
                throw std::out_of_range("xi window leaves the line domain");
            }
            frame.U[k] = tau * cubic_uniform(u.values(), g.x_lo(), g.spacing(), x);
            frame.V[k] = tau * cubic_uniform(state.v.values(), g.x_lo(), g.spacing(), x);
        }
    }
    return frame;
}

LambdaEstimate estimate_lambda(std::span<const SelfSimilarFrame> frames) {
    if (frames.size() < 3) throw std::invalid_argument("lambda estimate needs at least 3 frames");
    LambdaEstimate est;
    for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
        const SelfSimilarFrame& a = frames[i];
        const SelfSimilarFrame& b = frames[i + 1];
        if (!(b.t > a.t)) throw std::invalid_argument("frames must have increasing times");
        double dx = b.x0 - a.x0;
        if (a.period > 0.0) dx = std::remainder(dx, a.period);
        const double ds = std::sqrt(a.T - a.t) - std::sqrt(b.T - b.t);
        est.interval_estimates.push_back(dx / (2.0 * ds));
    }
    const std::size_t count = std::min<std::size_t>(3, est.interval_estimates.size());
    const auto tail = std::span(est.interval_estimates).last(count);
    double sum = 0.0;
    for (double v : tail) sum += v;
    est.lambda = sum / static_cast<double>(count);
    for (double v : tail) est.spread = std::max(est.spread, std::abs(v - est.lambda));
    return est;
}

CollapseResult collapse_profiles(const SelfSimilarFrame& reference, const SelfSimilarFrame& other,
                                 double xi_window) {
    if (reference.xi.size() < 4 || other.xi.size() < 4) {
        throw std::invalid_argument("frames need at least 4 samples");
    }
    double ref_scale = 0.0;
    for (double v : reference.U) ref_scale = std::max(ref_scale, std::abs(v));
    if (!(ref_scale > 0.0)) throw std::invalid_argument("reference profile is identically zero");

    const double o_lo = other.xi.front();
    const double o_hi = other.xi.back();
    const double o_dxi = (o_hi - o_lo) / static_cast<double>(other.xi.size() - 1);

    auto mismatch = [&](double s) {
        double worst = 0.0;
        std::size_t used = 0;
        for (std::size_t k = 0; k < reference.xi.size(); ++k) {
            const double xi = reference.xi[k];
            if (std::abs(xi) > xi_window) continue;
            const double y = s * xi;
            if (y < o_lo || y > o_hi) continue;
            const double diff = cubic_uniform(other.U, o_lo, o_dxi, y) - reference.U[k];
            worst = std::max(worst, std::abs(diff));
            ++used;
        }
        if (used < 3) return std::numeric_limits<double>::infinity();
        return worst / ref_scale;
    };

    const double log_lo = std::log(1.0 / 20.0);
    const double log_hi = std::log(20.0);
    const int scan = 960;  // even, so s = 1 is on the scan
    const double step = (log_hi - log_lo) / scan;
    double best_x = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= scan; ++k) {
        const double x = k == scan / 2 ? 0.0 : log_lo + step * k;
        const double f = mismatch(std::exp(x));
        if (f < best) {
            best = f;
            best_x = x;
        }
    }
    if (!std::isfinite(best)) throw std::invalid_argument("profile xi ranges do not overlap");

    double a = best_x - step;
    double b = best_x + step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = mismatch(std::exp(c));
    double fd = mismatch(std::exp(d));
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = mismatch(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = mismatch(std::exp(d));
        }
    }
    for (double x : {c, d}) {
        const double f = mismatch(std::exp(x));
        if (f < best) {
            best = f;
            best_x = x;
        }
    }
    return CollapseResult{best_x == 0.0 ? 1.0 : std::exp(best_x), best};
}

std::string to_string(BkmClass c) {
    return c == BkmClass::SuperlinearGrowth ? "superlinear-growth" : "bounded-so-far";
}

BkmReport bkm_monitor(std::span<const NormRecord> history) {
    if (history.empty()) throw std::invalid_argument("BKM monitor needs a nonempty history");
    BkmReport report;
    report.integral = history.back().bkm_integral;
    report.final_integrand = history.back().bkm_integrand;
    report.growth_rate = report.final_integrand;

    const double first = history.front().bkm_integrand;
    double top = 0.0;
    for (const NormRecord& r : history) top = std::max(top, r.bkm_integrand);
    if (!(top > 0.0) || !(top >= 100.0 * first)) return report;

    std::vector<double> t, inv;
    for (const NormRecord& r : history) {
        if (r.bkm_integrand >= top / 10.0) {
            t.push_back(r.t);
            inv.push_back(1.0 / r.bkm_integrand);
        }
    }
    if (t.size() < 10) return report;
    const Line line = least_squares(t, inv);
    if (!(line.slope < 0.0)) return report;
    double residual = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double model = line.intercept + line.slope * t[i];
        residual = std::max(residual, std::abs(inv[i] - model) / inv[i]);
    }
    report.tail_T = -line.intercept / line.slope;
    report.tail_c = -1.0 / line.slope;
    report.tail_residual = residual;
    if (residual < 0.05) report.classification = BkmClass::SuperlinearGrowth;
    return report;
}

}  // namespace nonlocal
