#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <map>
#include <string>

#include "json.hpp"

#include "secondsound/audit.hpp"
#include "secondsound/config.hpp"
#include "secondsound/constitutive.hpp"
#include "secondsound/fourier.hpp"
#include "secondsound/kinematics.hpp"
#include "secondsound/material.hpp"
#include "secondsound/sim1d.hpp"

namespace py = pybind11;
using namespace secondsound;

namespace {

Mat3 mat_from(const std::array<double, 9>& a) {
    Mat3 m;
    m.m = a;
    return m;
}

Vec3 vec_from(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

ReferentialState state_from(const std::array<double, 9>& F, double theta,
                            const std::array<double, 3>& W, const std::array<double, 3>& Q,
                            const std::array<double, 3>& G) {
    ReferentialState s;
    s.F = mat_from(F);
    s.theta = theta;
    s.W = vec_from(W);
    s.Q = vec_from(Q);
    s.G = vec_from(G);
    return s;
}

std::string audit_json(const std::string& preset, const std::map<std::string, double>& params,
                       int samples, std::uint64_t seed, const std::string& mode) {
    const MaterialModel m = make_preset(preset, params);
    AuditReport rep;
    if (mode == "fourier")
        rep = fourier_audit(fourier_from_cattaneo(m), samples, seed);
    else
        rep = coleman_noll_audit(m, samples, seed);
    return rep.to_json().dump();
}

std::string run_scenario_json(const std::string& config_json) {
    const nlohmann::json j = nlohmann::json::parse(config_json);
    nlohmann::json scenario_block = j;
    std::string preset = "isotropic";
    std::map<std::string, double> params;
    if (j.contains("material")) {
        const auto& m = j.at("material");
        if (m.contains("preset")) preset = m.at("preset").get<std::string>();
        if (m.contains("params"))
            for (const auto& [k, v] : m.at("params").items()) params[k] = v.get<double>();
        scenario_block.erase("material");
    }
    const MaterialModel m = make_preset(preset, params);
    const Scenario sc = parse_scenario(scenario_block, m);
    const SimResult result = run_scenario(sc);

    nlohmann::json out;
    out["report"] = result.report.to_json();
    out["snapshots"] = nlohmann::json::array();
    for (const Snapshot& s : result.snapshots) {
        nlohmann::json js;
        js["t"] = s.t;
        js["X"] = s.X;
        js["theta"] = s.theta;
        js["Q"] = s.Q;
        js["W"] = s.W;
        js["S"] = s.S;
        js["eta"] = s.eta;
        js["eps"] = s.eps;
        js["sigma_prod"] = s.sigma_prod;
        out["snapshots"].push_back(std::move(js));
    }
    return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "second-sound thermo-electro-elastic constitutive engine";

    py::class_<ReferentialState>(m, "ReferentialState")
        .def(py::init(&state_from), py::arg("F"), py::arg("theta"), py::arg("W"),
             py::arg("Q"), py::arg("G"))
        .def_property_readonly("F", [](const ReferentialState& s) { return s.F.m; })
        .def_readonly("theta", &ReferentialState::theta)
        .def_property_readonly("W", [](const ReferentialState& s) { return s.W.v; })
        .def_property_readonly("Q", [](const ReferentialState& s) { return s.Q.v; })
        .def_property_readonly("G", [](const ReferentialState& s) { return s.G.v; });

    m.def("preset_names", &preset_names);

    m.def("green_strain", [](const std::array<double, 9>& F) {
        return kinematics_from_F(mat_from(F)).E.m;
    });
    m.def("pull_heat_flux", [](const std::array<double, 9>& F, const std::array<double, 3>& q) {
        return pull_heat_flux(mat_from(F), vec_from(q)).v;
    });
    m.def("push_heat_flux", [](const std::array<double, 9>& F, const std::array<double, 3>& Q) {
        return push_heat_flux(mat_from(F), vec_from(Q)).v;
    });
    m.def("pull_covector", [](const std::array<double, 9>& F, const std::array<double, 3>& a) {
        return pull_covector(mat_from(F), vec_from(a)).v;
    });

    m.def(
        "evaluate",
        [](const std::string& preset, const std::map<std::string, double>& params,
           const ReferentialState& s) {
            const MaterialModel mm = make_preset(preset, params);
            const ConstitutiveOutput out = evaluate(mm, s);
            py::dict d;
            d["psi"] = out.psi;
            d["eta"] = out.eta;
            d["eps"] = out.eps;
            d["S"] = out.S.m;
            d["Pi"] = out.Pi.v;
            d["Q_dot"] = out.Q_dot.v;
            d["delta0"] = out.delta0;
            d["tau_cauchy"] = out.tau_cauchy.m;
            return d;
        },
        py::arg("preset"), py::arg("params"), py::arg("state"));

    m.def("heat_flux_rate",
          [](const std::string& preset, const std::map<std::string, double>& params,
             const ReferentialState& s) {
              const MaterialModel mm = make_preset(preset, params);
              return heat_flux_rate(mm, s).v;
          });

    m.def("cauchy_stress",
          [](const std::string& preset, const std::map<std::string, double>& params,
             const ReferentialState& s) {
              const MaterialModel mm = make_preset(preset, params);
              return cauchy_stress(mm, s).m;
          });

    m.def("audit_json", &audit_json, py::arg("preset"), py::arg("params"),
          py::arg("samples") = 100, py::arg("seed") = 20240101,
          py::arg("mode") = "cattaneo");
    m.def("fourier_audit_json",
          [](const std::string& preset, const std::map<std::string, double>& params,
             int samples, std::uint64_t seed) {
              return audit_json(preset, params, samples, seed, "fourier");
          },
          py::arg("preset"), py::arg("params"), py::arg("samples") = 100,
          py::arg("seed") = 20240101);

    m.def("run_scenario_json", &run_scenario_json, py::arg("config_json"));
}
