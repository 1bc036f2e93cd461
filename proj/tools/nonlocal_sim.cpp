#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nonlocal/preset.hpp"
#include "nonlocal/serialize.hpp"

using namespace nonlocal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNonFinite = 2;
constexpr int kExitIo = 3;

void print_summary(const ExperimentResult& r, const std::string& dir) {
    std::printf("stop: %s after %zu steps at t = %.10f (sup u = %.6g)\n",
                to_string(r.run.stop_reason).c_str(), r.run.steps_taken, r.run.final_state.t,
                r.run.norm_history.back().sup_u);
    if (r.fit) {
        std::printf("fit:  T = %.12f  C = %.8f  residual = %.3g  (%zu samples)\n", r.fit->T,
                    r.fit->C, r.fit->residual, r.fit->samples);
    } else if (!r.fit_error.empty()) {
        std::printf("fit:  failed (%s)\n", r.fit_error.c_str());
    }
    if (r.power_fit) {
        std::printf("free exponent: alpha = %.5f  T = %.12f\n", r.power_fit->alpha, r.power_fit->T);
    }
    if (r.lambda) std::printf("lambda = %.6f (spread %.2g)\n", r.lambda->lambda, r.lambda->spread);
    std::printf("BKM integral = %.6g (%s)\n", r.bkm.integral, to_string(r.bkm.classification).c_str());
    if (r.certificate) {
        std::printf("certificate (%s): C = %.6g  T* = %.6g  %s\n", to_string(r.certificate->kind).c_str(),
                    r.certificate->C_functional, r.certificate->T_star,
                    r.certificate->applicable ? "applicable" : r.certificate->note.c_str());
    }
    if (r.bound) {
        std::printf("bound check: T <= T* %s, inequality margin %.3g %s\n",
                    r.bound->time_bound_holds ? "holds" : "FAILS", r.bound->worst_margin,
                    r.bound->inequality_holds ? "holds" : "FAILS");
    }
    if (r.decay) {
        std::printf("decay rate %.4f, max ||v||_H1 %.6g (bound %.6g)\n", r.decay->sup_rate,
                    r.decay->max_h1_v, r.decay->h1_v_bound);
    }
    std::printf("artifacts in %s\n", dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate the nonlocal system u_t = alpha u v, v_t = beta H(u^2)"};
    std::string preset_name;
    std::string config_path;
    std::string out_dir;
    std::optional<std::size_t> n;
    std::optional<double> nu, alpha, stop_sup, stop_time;
    bool list = false;

    app.add_option("--preset", preset_name, "Named experiment");
    app.add_option("--config", config_path, "JSON run configuration (same schema as the echo)")
        ->check(CLI::ExistingFile);
    app.add_option("--n", n, "Grid size");
    app.add_option("--nu", nu, "Viscosity");
    app.add_option("--alpha", alpha, "Coefficient of u v");
    app.add_option("--stop-sup", stop_sup, "Stop when ||u||_inf reaches this value");
    app.add_option("--stop-time", stop_time, "Stop at this time");
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--list-presets", list, "List presets and exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const Preset& p : presets()) std::printf("%-26s %s\n", p.name.c_str(), p.description.c_str());
        return kExitOk;
    }
    if (preset_name.empty() == config_path.empty()) {
        std::cerr << "exactly one of --preset or --config is required\n";
        return kExitUsage;
    }

    RunConfig config;
    try {
        config = preset_name.empty() ? load_config(config_path) : find_preset(preset_name).config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return preset_name.empty() ? kExitIo : kExitUsage;
    }
    if (n) config.grid.n = *n;
    if (nu) config.model.nu = *nu;
    if (alpha) config.model.alpha = *alpha;
    if (stop_sup) config.stop.max_sup = *stop_sup;
    if (stop_time) config.stop.max_time = *stop_time;
    if (!out_dir.empty()) config.output_dir = out_dir;

    ExperimentResult result;
    try {
        result = execute(config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        write_artifacts(result, config.output_dir);
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    print_summary(result, config.output_dir);
    return result.run.stop_reason == StopReason::NonFinite ? kExitNonFinite : kExitOk;
}
