#include "nonlocal/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace nonlocal {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_row(std::ofstream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out << ',';
        out << fmt(v);
        first = false;
    }
    out << '\n';
}

// Non-finite numbers are written as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }


constexpr const char* kNormHeader = "t,dt,sup_u,sup_v,l2_u,l2_v,h1_u,h1_v,bkm_integral";

}  // namespace

void write_norm_csv(const std::filesystem::path& path, std::span<const NormRecord> history) {
    auto out = open_out(path);
    out << kNormHeader << '\n';
    for (const NormRecord& r : history) {
        write_row(out, {r.t, r.dt, r.sup_u, r.sup_v, r.l2_u, r.l2_v, r.h1_u, r.h1_v, r.bkm_integral});
    }
    finish(out, path);
}

std::vector<NormRecord> read_norm_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kNormHeader) {
        throw IoError("unexpected norm CSV header in " + path.string());
    }
    std::vector<NormRecord> history;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
        if (v.size() != 9) throw IoError("malformed norm CSV row in " + path.string());
        NormRecord r;
        r.t = v[0];
        r.dt = v[1];
        r.sup_u = v[2];
        r.sup_v = v[3];
        r.l2_u = v[4];
        r.l2_v = v[5];
        r.h1_u = v[6];
        r.h1_v = v[7];
        r.bkm_integrand = r.sup_u + r.sup_v;
        r.bkm_integral = v[8];
        history.push_back(r);
    }
    return history;
}

void write_snapshot_csv(const std::filesystem::path& path, const SolutionState& state) {
    auto out = open_out(path);
    out << "x,u,v\n";
    const Grid& g = state.u.grid();
    for (std::size_t j = 0; j < state.u.size(); ++j) {
        write_row(out, {g.point(j), state.u[j], state.v[j]});
    }
    finish(out, path);
}

void write_profile_csv(const std::filesystem::path& path, const SelfSimilarFrame& frame) {
    auto out = open_out(path);
    out << "xi,U,V\n";
    for (std::size_t k = 0; k < frame.xi.size(); ++k) {
        write_row(out, {frame.xi[k], frame.U[k], frame.V[k]});
    }
    finish(out, path);
}

json to_json(const BlowupFit& fit, const FitWindow& window) {
    return {{"T", fit.T},
            {"C", fit.C},
            {"alpha_exp", fit.alpha_exp},
            {"residual", fit.residual},
            {"samples", fit.samples},
            {"window",
             {{"sup_lo", num(window.sup_lo)},
              {"sup_hi", num(window.sup_hi)},
              {"exclude_last", window.exclude_last},
              {"t_start", fit.t_start},
              {"t_end", fit.t_end}}}};
}

BlowupFit blowup_fit_from_json(const json& j) {
    BlowupFit fit;
    fit.T = j.at("T").get<double>();
    fit.C = j.at("C").get<double>();
    fit.alpha_exp = j.at("alpha_exp").get<double>();
    fit.residual = j.at("residual").get<double>();
    fit.samples = j.at("samples").get<std::size_t>();
    fit.t_start = j.at("window").at("t_start").get<double>();
    fit.t_end = j.at("window").at("t_end").get<double>();
    return fit;
}

json to_json(const PowerLawFit& fit) {
    return {{"T", fit.T},
            {"C", fit.C},
            {"alpha", fit.alpha},
            {"rms_log_residual", fit.rms_log_residual},
            {"samples", fit.samples}};
}

json to_json(const LambdaEstimate& e) {
    return {{"lambda", e.lambda}, {"spread", e.spread}, {"interval_estimates", e.interval_estimates}};
}

json to_json(const BkmReport& r) {
    return {{"integral", r.integral},
            {"final_integrand", r.final_integrand},
            {"growth_rate", r.growth_rate},
            {"classification", to_string(r.classification)},
            {"tail_T", num(r.tail_T)},
            {"tail_c", num(r.tail_c)},
            {"tail_residual", num(r.tail_residual)}};
}

json to_json(const BlowupCertificate& c) {
    return {{"kind", to_string(c.kind)},
            {"C_functional", c.C_functional},
            {"support", {c.support_lo, c.support_hi}},
            {"T_star", num(c.T_star)},
            {"I_infty", c.I_infty},
            {"applicable", c.applicable},
            {"note", c.note}};
}

BlowupCertificate blowup_certificate_from_json(const json& j) {
    BlowupCertificate c;
    c.kind = certificate_kind_from_string(j.at("kind"));
    c.C_functional = j.at("C_functional").get<double>();
    c.support_lo = j.at("support").at(0).get<double>();
    c.support_hi = j.at("support").at(1).get<double>();
    c.T_star = j.at("T_star").is_null() ? std::numeric_limits<double>::infinity()
                                        : j.at("T_star").get<double>();
    c.I_infty = j.at("I_infty").get<double>();
    c.applicable = j.at("applicable").get<bool>();
    c.note = j.at("note").get<std::string>();
    return c;
}

json to_json(const BoundReport& r) {
    return {{"applicable", r.applicable},
            {"fitted_T", num(r.fitted_T)},
            {"T_star", num(r.T_star)},
            {"time_bound_holds", r.time_bound_holds},
            {"F0", num(r.F0)},
            {"Ft0", num(r.Ft0)},
            {"worst_margin", num(r.worst_margin)},
            {"checked_points", r.checked_points},
            {"inequality_holds", r.inequality_holds}};
}

json to_json(const RegularityCertificate& c) {
    return {{"delta", c.delta},
            {"v0x_l2", c.v0x_l2},
            {"u0x_l2_sq", c.u0x_l2_sq},
            {"lhs", c.lhs},
            {"smallness", c.smallness},
            {"v0_negative_enough", c.v0_negative_enough},
            {"satisfied", c.satisfied},
            {"v_h1_bound", c.v_h1_bound}};
}

json to_json(const DecayReport& r) {
    return {{"sup_rate", r.sup_rate},
            {"h1_rate", r.h1_rate},
            {"max_h1_v", r.max_h1_v},
            {"h1_v_bound", r.h1_v_bound},
            {"samples", r.samples},
            {"decay_holds", r.decay_holds},
            {"bound_holds", r.bound_holds}};
}

void write_json(const std::filesystem::path& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

}  // namespace nonlocal
