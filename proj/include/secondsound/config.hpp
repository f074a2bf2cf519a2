#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secondsound/audit.hpp"
#include "secondsound/sim1d.hpp"

#include "json.hpp"

// Declarative JSON configs for the command-line tool. Schema version 1;
// unknown keys are rejected everywhere so typos fail loudly instead of
// silently running defaults.

namespace secondsound {

struct AuditConfig {
    int samples = 100;
    std::uint64_t seed = 20240101;
    std::string mode = "cattaneo";  // or "fourier"
    FDScheme scheme;
    AuditTolerances tolerances;
};

struct CompareConfig {
    std::vector<double> tau_factors{1.0, 0.25, 0.0625, 0.015625};
};

struct SweepConfig {
    std::string parameter;  // "material.params.<name>"
    std::vector<double> values;
    int jobs = 1;
};

struct Config {
    std::string material_preset = "isotropic";
    std::map<std::string, double> material_params;
    std::string output_dir = "out";

    std::optional<AuditConfig> audit;
    std::optional<Scenario> simulate;        // material filled at load time
    std::optional<CompareConfig> compare;
    std::optional<SweepConfig> sweep;
    nlohmann::json scenario_json;            // raw scenario block for re-instantiation

    MaterialModel make_material() const;
    Scenario make_scenario(const MaterialModel& m) const;
};

Config load_config(const std::string& path);
Config parse_config(const nlohmann::json& j);

// Scenario block parser, shared by simulate/compare/sweep.
Scenario parse_scenario(const nlohmann::json& j, const MaterialModel& m);

}  // namespace secondsound
