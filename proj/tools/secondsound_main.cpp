#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "secondsound/audit.hpp"
#include "secondsound/config.hpp"
#include "secondsound/errors.hpp"
#include "secondsound/fourier.hpp"
#include "secondsound/sim1d.hpp"

namespace fs = std::filesystem;
using namespace secondsound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAuditFail = 2;
constexpr int kExitSimError = 3;

void write_json(const nlohmann::json& j, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << "\n";
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int cmd_audit(const Config& cfg, const fs::path& out_dir,
              std::optional<std::uint64_t> seed_override) {
    AuditConfig ac = cfg.audit.value_or(AuditConfig{});
    if (seed_override) ac.seed = *seed_override;

    const MaterialModel m = cfg.make_material();
    AuditReport report;
    if (ac.mode == "fourier") {
        report = fourier_audit(fourier_from_cattaneo(m), ac.samples, ac.seed, ac.scheme,
                               ac.tolerances);
    } else {
        report = coleman_noll_audit(m, ac.samples, ac.seed, ac.scheme, ac.tolerances);
    }

    fs::create_directories(out_dir);
    write_json(report.to_json(), out_dir / "audit_report.json");

    for (const auto& c : report.checks)
        std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name
                  << "  residual=" << fmt(c.residual) << "  tol=" << fmt(c.tol) << "\n";
    std::cout << "verdict: " << (report.pass ? "pass" : "fail") << "\n";
    return report.pass ? kExitOk : kExitAuditFail;
}

int cmd_simulate(const Config& cfg, const fs::path& out_dir) {
    if (!cfg.simulate) throw ConfigError("config has no \"simulate\" block");
    const MaterialModel m = cfg.make_material();
    const Scenario sc = cfg.make_scenario(m);

    const SimResult result = run_scenario(sc);
    fs::create_directories(out_dir);
    write_snapshot_csv(result.snapshots, (out_dir / "run.csv").string());
    write_json(result.report.to_json(), out_dir / "run_report.json");
    std::cout << "steps=" << result.report.steps << " dt=" << fmt(result.report.dt)
              << " front_speed=" << fmt(result.report.front_speed)
              << " clausius_duhem_min=" << fmt(result.report.clausius_duhem_min) << "\n";
    return kExitOk;
}

double l2_distance(const std::vector<double>& a, const std::vector<double>& b, double dX) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]) * dX;
    return std::sqrt(s);
}

int cmd_compare(const Config& cfg, const fs::path& out_dir) {
    if (!cfg.compare) throw ConfigError("config has no \"compare\" block");
    const CompareConfig& cc = *cfg.compare;

    fs::create_directories(out_dir);

    // Fourier reference run.
    const MaterialModel m0 = cfg.make_material();
    Scenario fsc = cfg.make_scenario(m0);
    fsc.mode = SimMode::Fourier;
    const SimResult fourier = run_scenario(fsc);
    write_snapshot_csv(fourier.snapshots, (out_dir / "fourier.csv").string());

    const std::vector<double>& theta_f = fourier.snapshots.back().theta;
    const double dX = fsc.L / fsc.N;
    double pulse_l2 = 0;
    {
        const std::vector<double>& th0 = fourier.snapshots.front().theta;
        std::vector<double> base(th0.size(), fsc.theta_base);
        pulse_l2 = l2_distance(th0, base, dX);
    }

    const double tau_base = isotropic_params_from_map(cfg.material_params).tau_rel;

    nlohmann::json jrep;
    jrep["pulse_l2"] = pulse_l2;
    jrep["entries"] = nlohmann::json::array();

    std::ofstream summary(out_dir / "compare_summary.csv");
    summary << "tau_factor,tau_rel,l2_distance,front_speed\n";

    std::vector<double> distances;
    for (std::size_t k = 0; k < cc.tau_factors.size(); ++k) {
        const double factor = cc.tau_factors[k];
        auto params = cfg.material_params;
        params["tau_rel"] = tau_base * factor;
        const MaterialModel mk = make_preset(cfg.material_preset, params);
        Scenario sck = parse_scenario(cfg.scenario_json, mk);
        sck.mode = SimMode::Cattaneo;
        const SimResult run = run_scenario(sck);

        char name[64];
        std::snprintf(name, sizeof(name), "cattaneo_%02zu.csv", k);
        write_snapshot_csv(run.snapshots, (out_dir / name).string());

        const double dist = l2_distance(run.snapshots.back().theta, theta_f, dX);
        distances.push_back(dist);
        summary << fmt(factor) << ',' << fmt(tau_base * factor) << ',' << fmt(dist) << ','
                << fmt(run.report.front_speed) << "\n";
        jrep["entries"].push_back({{"tau_factor", factor},
                                   {"tau_rel", tau_base * factor},
                                   {"l2_distance", dist},
                                   {"front_speed", run.report.front_speed}});
        std::cout << "tau_factor=" << fmt(factor) << " l2=" << fmt(dist) << "\n";
    }

    bool monotone = true;
    for (std::size_t i = 1; i < distances.size(); ++i)
        monotone = monotone && distances[i] < distances[i - 1];
    jrep["monotone_decreasing"] = monotone;
    jrep["final_relative_distance"] =
        distances.empty() || pulse_l2 == 0 ? 0.0 : distances.back() / pulse_l2;
    write_json(jrep, out_dir / "compare_report.json");
    return kExitOk;
}

int cmd_sweep(const Config& cfg, const fs::path& out_dir) {
    if (!cfg.sweep) throw ConfigError("config has no \"sweep\" block");
    const SweepConfig& sw = *cfg.sweep;
    const std::string pname = sw.parameter.substr(std::string("material.params.").size());

    fs::create_directories(out_dir);

    struct Row {
        double value = 0;
        double front_speed = 0;
        double entropy_violation = 0;
    };
    std::vector<Row> rows(sw.values.size());

    const auto run_one = [&](std::size_t k) {
        auto params = cfg.material_params;
        params[pname] = sw.values[k];
        const MaterialModel mk = make_preset(cfg.material_preset, params);
        const Scenario sck = parse_scenario(cfg.scenario_json, mk);
        const SimResult run = run_scenario(sck);

        char dir[64];
        std::snprintf(dir, sizeof(dir), "run_%03zu", k);
        const fs::path rundir = out_dir / dir;
        fs::create_directories(rundir);
        write_snapshot_csv(run.snapshots, (rundir / "run.csv").string());
        write_json(run.report.to_json(), rundir / "run_report.json");

        rows[k].value = sw.values[k];
        rows[k].front_speed = run.report.front_speed;
        rows[k].entropy_violation = std::fmax(0.0, -run.report.clausius_duhem_min);
    };

    if (sw.jobs > 1) {
        std::vector<std::future<void>> futures;
        std::size_t next = 0;
        while (next < sw.values.size() || !futures.empty()) {
            while (next < sw.values.size() &&
                   futures.size() < static_cast<std::size_t>(sw.jobs))
                futures.push_back(std::async(std::launch::async, run_one, next++));
            futures.front().get();
            futures.erase(futures.begin());
        }
    } else {
        for (std::size_t k = 0; k < sw.values.size(); ++k) run_one(k);
    }

    std::ofstream summary(out_dir / "sweep_summary.csv");
    summary << "parameter,front_speed,entropy_violation\n";
    for (const Row& r : rows)
        summary << fmt(r.value) << ',' << fmt(r.front_speed) << ','
                << fmt(r.entropy_violation) << "\n";
    std::cout << "sweep complete: " << rows.size() << " runs\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"second-sound constitutive audits and 1-D coupled-field simulation"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t seed_value = 0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_override, "output directory override");
        sub->add_option("--seed", seed_value, "seed override");
    };

    CLI::App* audit = app.add_subcommand("audit", "run the constitutive audit");
    CLI::App* simulate = app.add_subcommand("simulate", "run one 1-D scenario");
    CLI::App* compare =
        app.add_subcommand("compare", "second-sound vs Fourier profile comparison");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep over scenarios");
    for (CLI::App* sub : {audit, simulate, compare, sweep}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    if (audit->parsed() && audit->count("--seed")) seed_override = seed_value;

    try {
        const Config cfg = load_config(config_path);
        const fs::path out_dir = out_override.empty() ? cfg.output_dir : out_override;
        if (audit->parsed()) return cmd_audit(cfg, out_dir, seed_override);
        if (simulate->parsed()) return cmd_simulate(cfg, out_dir);
        if (compare->parsed()) return cmd_compare(cfg, out_dir);
        if (sweep->parsed()) return cmd_sweep(cfg, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSimError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSimError;
    }
    return kExitOk;
}
