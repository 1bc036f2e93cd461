#include "nonlocal/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "nonlocal/expression.hpp"

namespace nonlocal {
namespace {

using nlohmann::json;

json limit_to_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double limit_from_json(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::numeric_limits<double>::infinity();
    return j.at(key).get<double>();
}

double ic1(double x) {
    const double s = (x - 0.5) / 0.05;
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double ic2(double x) {
    return 2.0 + std::sin(2.0 * std::numbers::pi * x) + std::cos(4.0 * std::numbers::pi * x);
}

double ic3(double x) { return 1.0 / (1.2 + std::cos(2.0 * std::numbers::pi * x)); }

}  // namespace

std::string to_string(InitialCondition ic) {
    switch (ic) {
        case InitialCondition::IC1: return "ic1";
        case InitialCondition::IC2: return "ic2";
        case InitialCondition::IC3: return "ic3";
        case InitialCondition::Custom: return "custom";
    }
    return "unknown";
}

InitialCondition initial_condition_from_string(const std::string& name) {
    if (name == "ic1") return InitialCondition::IC1;
    if (name == "ic2") return InitialCondition::IC2;
    if (name == "ic3") return InitialCondition::IC3;
    if (name == "custom") return InitialCondition::Custom;
    throw std::invalid_argument("unknown initial condition: " + name);
}

void RunConfig::validate() const {
    model.validate();
    policy.validate();
    make_grid(grid);
    const bool periodic = grid.kind == GridKind::Periodic;
    if (initial_condition == InitialCondition::IC1 && periodic) {
        throw std::invalid_argument("ic1 needs a line grid");
    }
    if ((initial_condition == InitialCondition::IC2 || initial_condition == InitialCondition::IC3) &&
        !periodic) {
        throw std::invalid_argument(to_string(initial_condition) + " needs a periodic grid");
    }
    if (model.nu > 0.0 && !periodic) throw std::invalid_argument("viscous runs need a periodic grid");
    if (initial_condition == InitialCondition::Custom) {
        if (u0_expression.empty()) throw std::invalid_argument("custom data needs a u0 expression");
        Expression::parse(u0_expression);
        Expression::parse(v0_expression);
    }
    if (!std::isfinite(stop.max_time) && !std::isfinite(stop.max_sup)) {
        throw std::invalid_argument("stop spec needs a finite time or sup-norm limit");
    }
    if (record_every == 0) throw std::invalid_argument("record_every must be positive");
}

SolutionState build_initial_condition(const RunConfig& config, const GridPtr& grid) {
    const bool periodic = grid->periodic();
    SolutionState s;
    switch (config.initial_condition) {
        case InitialCondition::IC1:
            if (periodic) throw std::invalid_argument("ic1 needs a line grid");
            s.u = Field::sample(grid, ic1, true);
            break;
        case InitialCondition::IC2:
        case InitialCondition::IC3:
            if (!periodic) throw std::invalid_argument("ic2/ic3 need a periodic grid");
            s.u = Field::sample(grid, config.initial_condition == InitialCondition::IC2 ? ic2 : ic3);
            break;
        case InitialCondition::Custom: {
            const Expression u0 = Expression::parse(config.u0_expression);
            const Expression v0 = Expression::parse(config.v0_expression);
            s.u = Field::sample(grid, u0, !periodic);
            s.v = Field::sample(grid, v0);
            return s;
        }
    }
    s.v = Field(grid);
    return s;
}

json to_json(const RunConfig& c) {
    json j;
    j["model"] = {{"alpha", c.model.alpha},
                  {"beta", c.model.beta},
                  {"nu", c.model.nu},
                  {"variant", to_string(c.model.variant)},
                  {"clm_form", to_string(c.model.clm_form)}};
    j["grid"] = {{"kind", to_string(c.grid.kind)},
                 {"n", c.grid.n},
                 {"x_lo", c.grid.x_lo},
                 {"x_hi", c.grid.x_hi},
                 {"support_lo", c.grid.support_lo},
                 {"support_hi", c.grid.support_hi}};
    j["initial_condition"] = to_string(c.initial_condition);
    if (c.initial_condition == InitialCondition::Custom) {
        j["u0_expression"] = c.u0_expression;
        j["v0_expression"] = c.v0_expression;
    }
    j["policy"] = {{"c_dt", c.policy.c_dt},
                   {"dt_max", c.policy.dt_max},
                   {"dt_floor", c.policy.dt_floor},
                   {"recompute_every", c.policy.recompute_every}};
    j["stop"] = {{"max_time", limit_to_json(c.stop.max_time)},
                 {"max_sup", limit_to_json(c.stop.max_sup)}};
    j["snapshot_sup_thresholds"] = c.snapshot_sup_thresholds;
    j["record_every"] = c.record_every;
    j["output_dir"] = c.output_dir;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    if (j.contains("model")) {
        const json& m = j.at("model");
        c.model.alpha = m.value("alpha", c.model.alpha);
        c.model.beta = m.value("beta", c.model.beta);
        c.model.nu = m.value("nu", c.model.nu);
        if (m.contains("variant")) c.model.variant = model_variant_from_string(m.at("variant"));
        if (m.contains("clm_form")) c.model.clm_form = clm_form_from_string(m.at("clm_form"));
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        c.grid.kind = grid_kind_from_string(g.value("kind", std::string("periodic")));
        c.grid.n = g.value("n", c.grid.n);
        c.grid.x_lo = g.value("x_lo", 0.0);
        c.grid.x_hi = g.value("x_hi", 1.0);
        c.grid.support_lo = g.value("support_lo", 0.0);
        c.grid.support_hi = g.value("support_hi", 0.0);
    }
    if (j.contains("initial_condition")) {
        c.initial_condition = initial_condition_from_string(j.at("initial_condition"));
    }
    c.u0_expression = j.value("u0_expression", c.u0_expression);
    c.v0_expression = j.value("v0_expression", c.v0_expression);
    if (j.contains("policy")) {
        const json& p = j.at("policy");
        c.policy.c_dt = p.value("c_dt", c.policy.c_dt);
        c.policy.dt_max = p.value("dt_max", c.policy.dt_max);
        c.policy.dt_floor = p.value("dt_floor", c.policy.dt_floor);
        c.policy.recompute_every = p.value("recompute_every", c.policy.recompute_every);
    }
    if (j.contains("stop")) {
        c.stop.max_time = limit_from_json(j.at("stop"), "max_time");
        c.stop.max_sup = limit_from_json(j.at("stop"), "max_sup");
    }
    c.snapshot_sup_thresholds =
        j.value("snapshot_sup_thresholds", std::vector<double>{});
    c.record_every = j.value("record_every", c.record_every);
    c.output_dir = j.value("output_dir", c.output_dir);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    try {
        return config_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed config file " + path.string() + ": " + e.what());
    }
}

}  // namespace nonlocal
