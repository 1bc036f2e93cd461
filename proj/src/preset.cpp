#include "nonlocal/preset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nonlocal/calculus.hpp"
#include "nonlocal/serialize.hpp"

namespace nonlocal {
namespace {

using nlohmann::json;

bool is_canonical(const ModelSpec& m) {
    return m.variant == ModelVariant::Full && m.alpha == 2.0 && m.beta == 1.0;
}

std::string numbered(const char* stem, std::size_t i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%02zu.csv", stem, i);
    return buf;
}

RunConfig periodic_config(InitialCondition ic, std::size_t n, double nu) {
    RunConfig c;
    c.grid = GridSpec::periodic(n);
    c.initial_condition = ic;
    c.model.nu = nu;
    // The peak width scales like (T - t)^{1/2}, so the resolvable ||u||_inf
    // grows like n^2; 1e6 is resolved at n = 16384.
    const double r = static_cast<double>(n) / 16384.0;
    c.stop.max_sup = std::min(1e6, 1e6 * r * r);
    for (double level = 1e2; level <= c.stop.max_sup; level *= 10.0) c.snapshot_sup_thresholds.push_back(level);
    return c;
}

std::vector<Preset> make_presets() {
    std::vector<Preset> out;
    {
        RunConfig c;
        c.grid = GridSpec::line(4096, 0.0, 1.0, 0.45, 0.55);
        c.initial_condition = InitialCondition::IC1;
        c.stop.max_sup = 1e5;
        c.snapshot_sup_thresholds = {3948, 17617, 78422};
        c.output_dir = "out/ic1-inviscid-n12";
        out.push_back({"ic1-inviscid-n12", "compact bump on the line, n = 4096", c});
    }
    auto add = [&](const std::string& name, const std::string& description, InitialCondition ic,
                   std::size_t n, double nu) {
        RunConfig c = periodic_config(ic, n, nu);
        c.output_dir = "out/" + name;
        out.push_back({name, description, c});
    };
    add("ic2-inviscid-n13", "2 + sin(2 pi x) + cos(4 pi x), n = 8192", InitialCondition::IC2, 8192, 0.0);
    add("ic2-inviscid-n14", "2 + sin(2 pi x) + cos(4 pi x), n = 16384", InitialCondition::IC2, 16384, 0.0);
    add("ic3-inviscid-n13", "1/(1.2 + cos(2 pi x)), n = 8192", InitialCondition::IC3, 8192, 0.0);
    add("ic3-inviscid-n14", "1/(1.2 + cos(2 pi x)), n = 16384", InitialCondition::IC3, 16384, 0.0);
    add("ic2-viscous-nu1e-3-n14", "ic2 with nu = 0.001, n = 16384", InitialCondition::IC2, 16384, 1e-3);
    add("ic3-viscous-nu1e-3-n14", "ic3 with nu = 0.001, n = 16384", InitialCondition::IC3, 16384, 1e-3);
    add("ic2-viscous-nu1e-2-n14", "ic2 with nu = 0.01, n = 16384", InitialCondition::IC2, 16384, 1e-2);
    add("ic3-viscous-nu1e-2-n14", "ic3 with nu = 0.01, n = 16384", InitialCondition::IC3, 16384, 1e-2);
    return out;
}

}  // namespace

ExperimentResult execute(const RunConfig& config) {
    config.validate();
    ExperimentResult res;
    res.config = config;
    const GridPtr grid = make_grid(config.grid);
    const SolutionState initial = build_initial_condition(config, grid);

    RunOptions options;
    options.snapshot_sup_thresholds = config.snapshot_sup_thresholds;
    options.record_every = config.record_every;

    const bool compact_line = !grid->periodic() && initial.u.compact_support();
    if (compact_line) {
        const CertificateKind kind = config.model.variant == ModelVariant::Clm
                                         ? CertificateKind::Clm
                                         : CertificateKind::CompactLine;
        res.certificate = blowup_certificate(initial.u, initial.v, kind);
        if (is_canonical(config.model) && res.certificate->applicable) {
            options.monitor_weight = TestWeight::shifted_linear(grid->support_lo());
        }
        if (is_canonical(config.model)) res.regularity = check_global_regularity(initial.u, initial.v);
    }

    res.run = run(initial, config.model, config.policy, config.stop, options);
    res.bkm = bkm_monitor(res.run.norm_history);

    if (res.run.stop_reason != StopReason::MaxTime) {
        res.window = FitWindow::final_decades(res.run.norm_history, 1.0, 5);
        try {
            res.fit = fit_blowup(res.run.norm_history, res.window);
        } catch (const std::exception& e) {
            res.fit_error = e.what();
        }
        try {
            res.power_fit = fit_power_law(res.run.norm_history, res.window);
        } catch (const std::exception&) {
        }
    }

    if (res.fit) {
        for (const Snapshot& s : res.run.snapshots) {
            if (s.trigger != "sup") continue;
            try {
                res.frames.push_back(extract_profile(s.state, *res.fit));
            } catch (const std::exception&) {
                // Frames outside the extraction range are skipped.
            }
        }
        if (res.frames.size() >= 3) {
            res.lambda = estimate_lambda(res.frames);
            for (std::size_t i = 0; i + 1 < res.frames.size(); ++i) {
                res.frames[i + 1].lambda_est = res.lambda->interval_estimates[i];
            }
        }
    }

    if (res.certificate && options.monitor_weight && res.fit) {
        res.bound = verify_bound(res.run, *res.certificate, res.fit->T);
    }
    if (res.regularity && res.regularity->satisfied && config.model.nu == 0.0) {
        try {
            res.decay = verify_decay(res.run, *res.regularity);
        } catch (const std::invalid_argument&) {
        }
    }
    return res;
}

json summary_json(const ExperimentResult& r) {
    json j;
    j["config"] = to_json(r.config);
    j["stop_reason"] = to_string(r.run.stop_reason);
    j["steps_taken"] = r.run.steps_taken;
    j["final_time"] = r.run.final_state.t;
    j["final_sup_u"] = r.run.norm_history.empty() ? 0.0 : r.run.norm_history.back().sup_u;
    j["fit"] = r.fit ? to_json(*r.fit, r.window) : json(nullptr);
    if (!r.fit_error.empty()) j["fit_error"] = r.fit_error;
    j["power_law"] = r.power_fit ? to_json(*r.power_fit) : json(nullptr);
    j["lambda"] = r.lambda ? to_json(*r.lambda) : json(nullptr);
    j["bkm"] = to_json(r.bkm);
    json snaps = json::array();
    for (std::size_t i = 0; i < r.run.snapshots.size(); ++i) {
        const Snapshot& s = r.run.snapshots[i];
        snaps.push_back({{"file", numbered("snapshot", i)},
                         {"trigger", s.trigger},
                         {"trigger_value", s.trigger_value},
                         {"t", s.state.t},
                         {"sup_u", peak_abs(s.state.u)}});
    }
    j["snapshots"] = snaps;
    json profiles = json::array();
    for (std::size_t i = 0; i < r.frames.size(); ++i) {
        const SelfSimilarFrame& f = r.frames[i];
        profiles.push_back({{"file", numbered("profile", i)},
                            {"t", f.t},
                            {"T", f.T},
                            {"x0", f.x0},
                            {"length_scale", f.length_scale},
                            {"U0", f.U_at_origin()},
                            {"lambda_est", std::isfinite(f.lambda_est) ? json(f.lambda_est)
                                                                       : json(nullptr)}});
    }
    j["profiles"] = profiles;
    return j;
}

void write_artifacts(const ExperimentResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    write_norm_csv(dir / "norms.csv", r.run.norm_history);
    write_snapshot_csv(dir / "final_state.csv", r.run.final_state);
    for (std::size_t i = 0; i < r.run.snapshots.size(); ++i) {
        write_snapshot_csv(dir / numbered("snapshot", i), r.run.snapshots[i].state);
    }
    for (std::size_t i = 0; i < r.frames.size(); ++i) {
        write_profile_csv(dir / numbered("profile", i), r.frames[i]);
    }
    write_json(dir / "fit.json", summary_json(r));

    json certs;
    certs["config"] = to_json(r.config);
    certs["blowup_certificate"] = r.certificate ? to_json(*r.certificate) : json(nullptr);
    certs["bound"] = r.bound ? to_json(*r.bound) : json(nullptr);
    certs["regularity"] = r.regularity ? to_json(*r.regularity) : json(nullptr);
    certs["decay"] = r.decay ? to_json(*r.decay) : json(nullptr);
    write_json(dir / "certificates.json", certs);
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list = make_presets();
    return list;
}

const Preset& find_preset(const std::string& name) {
    for (const Preset& p : presets()) {
        if (p.name == name) return p;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

ExperimentResult run_preset(const std::string& name,
                            const std::optional<std::filesystem::path>& out) {
    const Preset& p = find_preset(name);
    ExperimentResult r = execute(p.config);
    write_artifacts(r, out ? *out : std::filesystem::path(p.config.output_dir));
    return r;
}

}  // namespace nonlocal
