#include "secondsound/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "secondsound/errors.hpp"

namespace secondsound {
namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k))
            throw ConfigError(where + ": unknown key '" + k + "'");
}

double num(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

double num_or(const json& j, const std::string& key, double fallback,
              const std::string& where) {
    if (!j.contains(key)) return fallback;
    return num(j.at(key), where + "." + key);
}

int int_or(const json& j, const std::string& key, int fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

std::string str_or(const json& j, const std::string& key, const std::string& fallback,
                   const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::function<double(double)> parse_profile(const json& j, const std::string& where,
                                            double fallback_value) {
    if (j.is_null()) return uniform_field(fallback_value);
    require_keys(j, where, {"type", "value", "base", "amplitude", "center", "width", "mode"});
    const std::string type = str_or(j, "type", "uniform", where);
    if (type == "uniform") {
        return uniform_field(num_or(j, "value", fallback_value, where));
    }
    if (type == "gaussian_pulse") {
        const double base = num_or(j, "base", fallback_value, where);
        const double amp = num_or(j, "amplitude", 0.0, where);
        const double center = num_or(j, "center", 0.5, where);
        const double width = num_or(j, "width", 0.05, where);
        if (!(width > 0)) throw ConfigError(where + ": width must be > 0");
        return gaussian_pulse(base, amp, center, width);
    }
    if (type == "sine") {
        const double amp = num_or(j, "amplitude", 0.0, where);
        const double mode = num_or(j, "mode", 1.0, where);
        return [=](double X) { return amp * std::sin(mode * 3.14159265358979323846 * X); };
    }
    throw ConfigError(where + ": unknown profile type '" + type + "'");
}

std::function<double(double, double)> parse_source(const json& j, const std::string& where) {
    if (j.is_null()) return {};
    require_keys(j, where, {"type", "value", "base", "amplitude", "center", "width", "t_off"});
    const std::string type = str_or(j, "type", "none", where);
    if (type == "none") return {};
    if (type == "constant") {
        const double v = num_or(j, "value", 0.0, where);
        return [v](double, double) { return v; };
    }
    if (type == "gaussian_pulse") {
        const double amp = num_or(j, "amplitude", 0.0, where);
        const double center = num_or(j, "center", 0.5, where);
        const double width = num_or(j, "width", 0.05, where);
        const double t_off = num_or(j, "t_off", -1.0, where);
        if (!(width > 0)) throw ConfigError(where + ": width must be > 0");
        return [=](double X, double t) {
            if (t_off > 0 && t > t_off) return 0.0;
            const double z = (X - center) / width;
            return amp * std::exp(-0.5 * z * z);
        };
    }
    throw ConfigError(where + ": unknown source type '" + type + "'");
}

ThermalBC parse_thermal_bc(const json& j, const std::string& where, double theta_ref) {
    ThermalBC bc;
    if (j.is_null()) return bc;
    require_keys(j, where, {"type", "value"});
    const std::string type = str_or(j, "type", "flux", where);
    if (type == "dirichlet") {
        bc.kind = ThermalBC::Kind::Dirichlet;
        bc.value = num_or(j, "value", theta_ref, where);
    } else if (type == "flux") {
        bc.kind = ThermalBC::Kind::Flux;
        bc.value = num_or(j, "value", 0.0, where);
    } else {
        throw ConfigError(where + ": unknown thermal BC type '" + type + "'");
    }
    return bc;
}

MechanicalBC parse_mech_bc(const json& j, const std::string& where) {
    MechanicalBC bc;
    if (j.is_null()) return bc;
    if (!j.is_string()) throw ConfigError(where + ": expected \"fixed\" or \"free\"");
    const std::string s = j.get<std::string>();
    if (s == "fixed") bc.kind = MechanicalBC::Kind::Fixed;
    else if (s == "free") bc.kind = MechanicalBC::Kind::Free;
    else throw ConfigError(where + ": expected \"fixed\" or \"free\"");
    return bc;
}

}  // namespace

Scenario parse_scenario(const json& j, const MaterialModel& m) {
    const std::string where = "scenario";
    require_keys(j, where,
                 {"L", "N", "dt", "cfl", "t_end", "mode", "mechanics", "bc", "initial",
                  "heating", "body_force", "theta_base", "output_stride", "tau_factors",
                  "parameter", "values", "jobs"});
    Scenario sc;
    sc.material = m;
    sc.L = num_or(j, "L", 1.0, where);
    sc.N = int_or(j, "N", 400, where);
    sc.cfl = num_or(j, "cfl", 0.9, where);
    sc.t_end = num_or(j, "t_end", 1.0, where);
    if (!(sc.L > 0)) throw ConfigError("scenario.L must be > 0");
    if (sc.N < 8) throw ConfigError("scenario.N must be >= 8");
    if (!(sc.cfl > 0 && sc.cfl <= 0.9)) throw ConfigError("scenario.cfl must lie in (0, 0.9]");

    if (j.contains("dt")) {
        const json& v = j.at("dt");
        if (v.is_string()) {
            if (v.get<std::string>() != "auto")
                throw ConfigError("scenario.dt: expected a number or \"auto\"");
            sc.dt = 0;
        } else {
            sc.dt = num(v, "scenario.dt");
            if (!(sc.dt > 0)) throw ConfigError("scenario.dt must be > 0 or \"auto\"");
        }
    }

    const std::string mode = str_or(j, "mode", "cattaneo", where);
    if (mode == "cattaneo") sc.mode = SimMode::Cattaneo;
    else if (mode == "fourier") sc.mode = SimMode::Fourier;
    else throw ConfigError("scenario.mode: expected \"cattaneo\" or \"fourier\"");

    const std::string mech = str_or(j, "mechanics", "rigid", where);
    if (mech == "rigid") sc.rigid = true;
    else if (mech == "dynamic") sc.rigid = false;
    else throw ConfigError("scenario.mechanics: expected \"rigid\" or \"dynamic\"");

    sc.theta_base = num_or(j, "theta_base", m.theta_ref, where);
    sc.output_stride = int_or(j, "output_stride", 100, where);
    if (sc.output_stride < 1) throw ConfigError("scenario.output_stride must be >= 1");

    if (j.contains("bc")) {
        const json& b = j.at("bc");
        require_keys(b, "scenario.bc",
                     {"thermal_left", "thermal_right", "mech_left", "mech_right",
                      "phi_left", "phi_right"});
        sc.thermal_left = parse_thermal_bc(b.value("thermal_left", json()),
                                           "scenario.bc.thermal_left", m.theta_ref);
        sc.thermal_right = parse_thermal_bc(b.value("thermal_right", json()),
                                            "scenario.bc.thermal_right", m.theta_ref);
        sc.mech_left = parse_mech_bc(b.value("mech_left", json()), "scenario.bc.mech_left");
        sc.mech_right = parse_mech_bc(b.value("mech_right", json()), "scenario.bc.mech_right");
        sc.phi_left = num_or(b, "phi_left", 0.0, "scenario.bc");
        sc.phi_right = num_or(b, "phi_right", 0.0, "scenario.bc");
    }

    if (j.contains("initial")) {
        const json& ini = j.at("initial");
        require_keys(ini, "scenario.initial", {"theta", "Q", "u", "v"});
        sc.theta0 = parse_profile(ini.value("theta", json()), "scenario.initial.theta",
                                  sc.theta_base);
        sc.Q0 = parse_profile(ini.value("Q", json()), "scenario.initial.Q", 0.0);
        sc.u0 = parse_profile(ini.value("u", json()), "scenario.initial.u", 0.0);
        sc.v0 = parse_profile(ini.value("v", json()), "scenario.initial.v", 0.0);
    } else {
        sc.theta0 = uniform_field(sc.theta_base);
    }

    sc.heating = parse_source(j.value("heating", json()), "scenario.heating");
    sc.body_force = parse_source(j.value("body_force", json()), "scenario.body_force");
    return sc;
}

Config parse_config(const json& j) {
    require_keys(j, "config",
                 {"schema", "material", "output", "audit", "simulate", "compare", "sweep"});
    if (!j.contains("schema") || !j.at("schema").is_number_integer() ||
        j.at("schema").get<int>() != 1)
        throw ConfigError("config.schema: expected the integer 1");

    Config cfg;
    if (!j.contains("material")) throw ConfigError("config.material is required");
    {
        const json& m = j.at("material");
        require_keys(m, "config.material", {"preset", "params"});
        cfg.material_preset = str_or(m, "preset", "isotropic", "config.material");
        if (m.contains("params")) {
            const json& p = m.at("params");
            if (!p.is_object()) throw ConfigError("config.material.params: expected an object");
            for (const auto& [k, v] : p.items())
                cfg.material_params[k] = num(v, "config.material.params." + k);
        }
    }
    cfg.output_dir = str_or(j, "output", "out", "config");

    if (j.contains("audit")) {
        const json& a = j.at("audit");
        require_keys(a, "config.audit", {"samples", "seed", "mode", "tolerances", "fd_order"});
        AuditConfig ac;
        ac.samples = int_or(a, "samples", 100, "config.audit");
        if (ac.samples < 1) throw ConfigError("config.audit.samples must be >= 1");
        if (a.contains("seed")) {
            if (!a.at("seed").is_number_integer())
                throw ConfigError("config.audit.seed: expected an integer");
            ac.seed = a.at("seed").get<std::uint64_t>();
        }
        ac.mode = str_or(a, "mode", "cattaneo", "config.audit");
        if (ac.mode != "cattaneo" && ac.mode != "fourier")
            throw ConfigError("config.audit.mode: expected \"cattaneo\" or \"fourier\"");
        ac.scheme.order = int_or(a, "fd_order", 2, "config.audit");
        if (ac.scheme.order != 2 && ac.scheme.order != 4)
            throw ConfigError("config.audit.fd_order: expected 2 or 4");
        if (a.contains("tolerances")) {
            const json& t = a.at("tolerances");
            require_keys(t, "config.audit.tolerances",
                         {"gradient_rel", "g_independence", "dissipation_slack", "pd_tol",
                          "symmetry_tol"});
            ac.tolerances.gradient_rel =
                num_or(t, "gradient_rel", ac.tolerances.gradient_rel, "tolerances");
            ac.tolerances.g_independence =
                num_or(t, "g_independence", ac.tolerances.g_independence, "tolerances");
            ac.tolerances.dissipation_slack =
                num_or(t, "dissipation_slack", ac.tolerances.dissipation_slack, "tolerances");
            ac.tolerances.pd_tol = num_or(t, "pd_tol", ac.tolerances.pd_tol, "tolerances");
            ac.tolerances.symmetry_tol =
                num_or(t, "symmetry_tol", ac.tolerances.symmetry_tol, "tolerances");
        }
        cfg.audit = ac;
    }

    if (j.contains("simulate")) {
        cfg.scenario_json = j.at("simulate");
        cfg.simulate = parse_scenario(cfg.scenario_json, cfg.make_material());
    }

    if (j.contains("compare")) {
        const json& c = j.at("compare");
        CompareConfig cc;
        if (c.contains("tau_factors")) {
            if (!c.at("tau_factors").is_array())
                throw ConfigError("config.compare.tau_factors: expected an array");
            cc.tau_factors.clear();
            for (const auto& v : c.at("tau_factors"))
                cc.tau_factors.push_back(num(v, "config.compare.tau_factors[]"));
            if (cc.tau_factors.empty())
                throw ConfigError("config.compare.tau_factors must be non-empty");
        }
        cfg.compare = cc;
        cfg.scenario_json = c;
        // validates the scenario fields (mode is forced per run later)
        parse_scenario(cfg.scenario_json, cfg.make_material());
    }

    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        SweepConfig sw;
        sw.parameter = str_or(s, "parameter", "", "config.sweep");
        if (sw.parameter.rfind("material.params.", 0) != 0)
            throw ConfigError(
                "config.sweep.parameter must name a material parameter "
                "(\"material.params.<name>\")");
        if (!s.contains("values") || !s.at("values").is_array() || s.at("values").empty())
            throw ConfigError("config.sweep.values: expected a non-empty array");
        for (const auto& v : s.at("values"))
            sw.values.push_back(num(v, "config.sweep.values[]"));
        sw.jobs = int_or(s, "jobs", 1, "config.sweep");
        if (sw.jobs < 1) throw ConfigError("config.sweep.jobs must be >= 1");
        cfg.sweep = sw;
        cfg.scenario_json = s;
        parse_scenario(cfg.scenario_json, cfg.make_material());
    }

    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

MaterialModel Config::make_material() const {
    return make_preset(material_preset, material_params);
}

Scenario Config::make_scenario(const MaterialModel& m) const {
    return parse_scenario(scenario_json, m);
}

}  // namespace secondsound
