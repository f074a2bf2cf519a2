#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "secondsound/constitutive.hpp"
#include "secondsound/fourier.hpp"
#include "secondsound/material.hpp"

#include "json.hpp"

// Method-of-lines integrator for the 1-D referential coupled system:
// momentum, energy, the Cattaneo heat-flux evolution (or the Fourier
// flux response), and quasi-static 1-D electrostatics.
//
// Grid: velocity and displacement live on faces, everything else on
// cell centers. Heun (explicit RK2) in time; two-point differences for
// the staggered mechanical terms, three-point central differences for
// the thermal gradient and flux divergence.
//
// The temperature rate is recovered from the energy equation through
// the chain rule of the internal energy; the electrostatic constraint
// Div Delta = 0 is solved each stage (Delta spatially constant, pinned
// by the potential drop across the bar).

namespace secondsound {

struct ThermalBC {
    enum class Kind { Dirichlet, Flux };
    Kind kind = Kind::Flux;
    double value = 0;  // temperature or boundary heat flux
};

struct MechanicalBC {
    enum class Kind { Fixed, Free };
    Kind kind = Kind::Fixed;
};

enum class SimMode { Cattaneo, Fourier };

struct Scenario {
    double L = 1.0;
    int N = 400;           // >= 8 cells
    double dt = 0;         // <= 0 requests the automatic CFL choice
    double cfl = 0.9;
    double t_end = 1.0;
    MaterialModel material;
    SimMode mode = SimMode::Cattaneo;
    bool rigid = true;     // freeze mechanics (x = X)

    ThermalBC thermal_left, thermal_right;
    MechanicalBC mech_left, mech_right;
    double phi_left = 0, phi_right = 0;

    double theta_base = 0;  // undisturbed temperature; defaults to theta_ref
    std::function<double(double)> theta0;  // initial temperature theta0(X)
    std::function<double(double)> Q0;      // initial heat flux
    std::function<double(double)> u0, v0;  // initial displacement/velocity (faces)
    std::function<double(double, double)> body_force;  // b(X, t)
    std::function<double(double, double)> heating;     // r(X, t)

    int output_stride = 100;
};

struct Snapshot {
    double t = 0;
    std::vector<double> X, u, v, F, theta, Q, W, S, eta, eps, sigma_prod;
};

struct RunReport {
    int steps = 0;
    double dt = 0;
    double dX = 0;
    double c_elastic = 0;
    double c_second_sound = 0;
    double energy_residual_max = 0;    // max per-step balance residual
    double energy_residual_total = 0;  // |Delta E - integrated power| over the run
    double clausius_duhem_min = 0;     // min per-cell per-step entropy production
    double sigma_min = 0;              // instantaneous production density extremes
    double sigma_max = 0;
    double front_speed = 0;
    double front_threshold = 0;
    std::vector<std::pair<double, double>> front_positions;  // (t, X)

    nlohmann::json to_json() const;
};

struct SimResult {
    std::vector<Snapshot> snapshots;
    RunReport report;
};

// Automatic time step: advective CFL bound for both wave families, the
// damped-mode bound for the central/Heun pair, and the diffusive bound
// in Fourier mode.
double auto_time_step(const Scenario& sc);

SimResult run_scenario(const Scenario& sc);

// Convenience builders for the demo initial fields.
std::function<double(double)> uniform_field(double value);
std::function<double(double)> gaussian_pulse(double base, double amplitude, double center,
                                             double width);

void write_snapshot_csv(const std::vector<Snapshot>& snaps, const std::string& path);

}  // namespace secondsound
