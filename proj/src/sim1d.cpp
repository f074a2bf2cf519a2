#include "secondsound/sim1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "secondsound/errors.hpp"
#include "secondsound/kinematics.hpp"

namespace secondsound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ReferentialState cell_state(double Fx, double th, double Wx, double Qx, double Gx) {
    ReferentialState s;
    s.F = Mat3::diag(Fx, 1.0, 1.0);
    s.theta = th;
    s.W = Vec3{Wx, 0, 0};
    s.Q = Vec3{Qx, 0, 0};
    s.G = Vec3{Gx, 0, 0};
    return s;
}

struct GridState {
    double t = 0;
    std::vector<double> u, v;         // faces (N+1); empty in rigid mode
    std::vector<double> F, theta, Q;  // centers (N); Q is a cache in Fourier mode
};

struct StageEval {
    std::vector<double> dv;               // faces
    std::vector<double> dF, dtheta, dQ;   // centers
    std::vector<double> W;                // solved electric field
    std::vector<double> Qv;               // flux used this stage
    std::vector<double> S;                // stress S_xX per cell (dynamic only)
    std::vector<double> supply;           // rho r/th - DivQ/th + Q G/th^2
    std::vector<double> eps, eta;         // specific energy/entropy per cell
    std::vector<double> sigma;            // instantaneous production density
    double power = 0;                     // boundary + source power
};

struct Sim {
    const Scenario& sc;
    int N;
    double dX;
    bool dynamic;
    bool electro;      // potential drop present
    double theta_base;
    double pulse_height = 0;
    double front_threshold = 0;

    explicit Sim(const Scenario& s)
        : sc(s),
          N(s.N),
          dX(s.L / s.N),
          dynamic(!s.rigid),
          electro(s.phi_left != s.phi_right),
          theta_base(s.theta_base > 0 ? s.theta_base : s.material.theta_ref) {}

    double Xc(int i) const { return (i + 0.5) * dX; }
    double Xf(int j) const { return j * dX; }
};

double eval_or(const std::function<double(double)>& f, double x, double fallback) {
    return f ? f(x) : fallback;
}

// Quasi-static electrostatics: Div Delta = 0 makes Delta = W/F + 4 pi IP(W)
// uniform along the bar; the value is pinned by the potential drop
// integral of W = -dphi/dX. Newton in the scalar Delta with a nested
// per-cell solve for W.
void solve_electric(const Sim& sim, const std::vector<double>& F,
                    const std::vector<double>& theta, const std::vector<double>& Q,
                    std::vector<double>& W) {
    const int N = sim.N;
    W.assign(N, 0.0);
    if (!sim.electro) return;

    const MaterialModel& m = sim.sc.material;
    const double V = sim.sc.phi_left - sim.sc.phi_right;  // = integral of W

    const auto ip_x = [&](int i, double Wx) {
        const ReferentialState s = cell_state(F[i], theta[i], Wx, Q[i], 0.0);
        return m.rho_R * full_polarization(m, s)[0];
    };

    double delta = 0.0;
    for (int outer = 0; outer < 50; ++outer) {
        double integral = 0.0, dintegral = 0.0;
        for (int i = 0; i < N; ++i) {
            double Wx = W[i];
            double slope = 1.0;
            for (int it = 0; it < 40; ++it) {
                const double f = Wx / F[i] + kFourPi * ip_x(i, Wx) - delta;
                const double h = 1e-7 * std::fmax(1.0, std::fabs(Wx));
                slope = 1.0 / F[i] +
                        kFourPi * (ip_x(i, Wx + h) - ip_x(i, Wx - h)) / (2 * h);
                const double step = f / slope;
                Wx -= step;
                if (std::fabs(step) <= 1e-14 * std::fmax(1.0, std::fabs(Wx))) break;
            }
            W[i] = Wx;
            integral += Wx * sim.dX;
            dintegral += sim.dX / slope;
        }
        const double g = integral - V;
        if (std::fabs(g) <= 1e-13 * std::fmax(1.0, std::fabs(V))) return;
        delta -= g / dintegral;
    }
}

// Ghost values encode the thermal boundary conditions: a Dirichlet ghost
// reflects the temperature through the wall value, a flux ghost pins the
// wall-face heat flux; the complementary field is linearly extrapolated.
struct ThermalGhosts {
    double theta_l, theta_r, q_l, q_r;
};

ThermalGhosts thermal_ghosts(const Sim& sim, const std::vector<double>& theta,
                             const std::vector<double>& Qv) {
    const int N = sim.N;
    ThermalGhosts g{};
    const ThermalBC& bl = sim.sc.thermal_left;
    const ThermalBC& br = sim.sc.thermal_right;

    if (bl.kind == ThermalBC::Kind::Dirichlet) {
        g.theta_l = 2 * bl.value - theta[0];
        g.q_l = N > 1 ? 2 * Qv[0] - Qv[1] : Qv[0];
    } else {
        g.theta_l = N > 1 ? 2 * theta[0] - theta[1] : theta[0];
        g.q_l = 2 * bl.value - Qv[0];
    }
    if (br.kind == ThermalBC::Kind::Dirichlet) {
        g.theta_r = 2 * br.value - theta[N - 1];
        g.q_r = N > 1 ? 2 * Qv[N - 1] - Qv[N - 2] : Qv[N - 1];
    } else {
        g.theta_r = N > 1 ? 2 * theta[N - 1] - theta[N - 2] : theta[N - 1];
        g.q_r = 2 * br.value - Qv[N - 1];
    }
    return g;
}

// One right-hand-side evaluation of the semi-discrete system, together
// with everything the entropy/energy ledgers need at this state.
void eval_stage(const Sim& sim, const GridState& y, const std::vector<double>& W_prev,
                double dt_prev, StageEval& out) {
    const int N = sim.N;
    const double dX = sim.dX;
    const MaterialModel& m = sim.sc.material;
    const double rho = m.rho_R;
    const Scenario& sc = sim.sc;

    out.dF.assign(N, 0.0);
    out.dtheta.assign(N, 0.0);
    out.dQ.assign(N, 0.0);
    out.supply.assign(N, 0.0);
    out.eps.assign(N, 0.0);
    out.eta.assign(N, 0.0);
    out.sigma.assign(N, 0.0);
    out.S.assign(N, 0.0);

    solve_electric(sim, y.F, y.theta, y.Q, out.W);

    // Flux field for this stage.
    if (sc.mode == SimMode::Fourier) {
        out.Qv.resize(N);
        // temperature gradient first (needs ghosts built from theta only)
        std::vector<double> Gtmp(N);
        {
            std::vector<double> q0(N, 0.0);
            const ThermalGhosts g = thermal_ghosts(sim, y.theta, q0);
            for (int i = 0; i < N; ++i) {
                const double thm = (i == 0) ? g.theta_l : y.theta[i - 1];
                const double thp = (i == N - 1) ? g.theta_r : y.theta[i + 1];
                Gtmp[i] = (thp - thm) / (2 * dX);
            }
        }
        for (int i = 0; i < N; ++i) {
            const Mat3 K = m.conductivity(Mat3::diag(y.F[i], 1, 1), y.theta[i],
                                          Vec3{out.W[i], 0, 0});
            out.Qv[i] = -(K * Vec3{Gtmp[i], 0, 0})[0];
        }
    } else {
        out.Qv = y.Q;
    }

    const ThermalGhosts gh = thermal_ghosts(sim, y.theta, out.Qv);

    // Mechanics.
    if (sim.dynamic) {
        out.dv.assign(N + 1, 0.0);
        for (int i = 0; i < N; ++i) {
            const ReferentialState s =
                cell_state(y.F[i], y.theta[i], out.W[i], y.Q[i], 0.0);
            out.S[i] = full_stress(m, s)(0, 0);
        }
        for (int j = 1; j < N; ++j) {
            const double b = sc.body_force ? sc.body_force(sim.Xf(j), y.t) : 0.0;
            out.dv[j] = (out.S[j] - out.S[j - 1]) / (rho * dX) + b;
        }
        if (sc.mech_left.kind == MechanicalBC::Kind::Free) {
            const double b = sc.body_force ? sc.body_force(0.0, y.t) : 0.0;
            out.dv[0] = (out.S[0] - 0.0) / (rho * 0.5 * dX) + b;
        }
        if (sc.mech_right.kind == MechanicalBC::Kind::Free) {
            const double b = sc.body_force ? sc.body_force(sc.L, y.t) : 0.0;
            out.dv[N] = (0.0 - out.S[N - 1]) / (rho * 0.5 * dX) + b;
        }
        for (int i = 0; i < N; ++i) out.dF[i] = (y.v[i + 1] - y.v[i]) / dX;
    }

    double electric_power = 0.0;
    double source_power = 0.0;

    for (int i = 0; i < N; ++i) {
        const double th = y.theta[i];
        const double thm = (i == 0) ? gh.theta_l : y.theta[i - 1];
        const double thp = (i == N - 1) ? gh.theta_r : y.theta[i + 1];
        const double qm = (i == 0) ? gh.q_l : out.Qv[i - 1];
        const double qp = (i == N - 1) ? gh.q_r : out.Qv[i + 1];
        const double G = (thp - thm) / (2 * dX);
        const double divQ = (qp - qm) / (2 * dX);
        const double r = sc.heating ? sc.heating(sim.Xc(i), y.t) : 0.0;

        const bool fourier = sc.mode == SimMode::Fourier;
        const double Qx = fourier ? 0.0 : y.Q[i];
        const ReferentialState s = cell_state(y.F[i], th, out.W[i], Qx, G);

        Vec3 Qdot = Vec3::zero();
        if (!fourier) {
            Qdot = heat_flux_rate(m, s);
            out.dQ[i] = Qdot[0];
        }

        const EnergyChainEval ch = energy_chain(m, s);
        const double Wdot = dt_prev > 0 ? (out.W[i] - W_prev[i]) / dt_prev : 0.0;
        const double Fdot = out.dF[i];

        // Polarization rate, split into the theta part (enters the
        // solve) and the rest.
        const double dPi_rest =
            ch.dPi_dW(0, 0) * Wdot + ch.dPi_dF[0](0, 0) * Fdot + ch.dPi_dQ(0, 0) * out.dQ[i];
        const double ip_rest = rho * dPi_rest;

        const double coeff = ch.deps_dtheta - out.W[i] * ch.dPi_dtheta[0];
        if (!(coeff > 0.0)) {
            std::ostringstream os;
            os << "effective heat capacity " << coeff << " <= 0 at cell " << i
               << ", t = " << y.t;
            throw SingularHeatCapacity(os.str());
        }
        const double Sdot_term = sim.dynamic ? out.S[i] * Fdot : 0.0;
        const double rhs = (Sdot_term - divQ + out.W[i] * ip_rest) / rho + r -
                           ch.deps_dF(0, 0) * Fdot - ch.deps_dW[0] * Wdot -
                           ch.deps_dQ[0] * out.dQ[i];
        out.dtheta[i] = rhs / coeff;

        out.eps[i] = ch.eps;
        out.eta[i] = ch.eta;
        out.supply[i] = rho * r / th - divQ / th + out.Qv[i] * G / (th * th);

        // sigma = -(1/theta^2) [rho theta dpsi/dQ . dQ/dt + Q.G]
        double diss = out.Qv[i] * G;
        if (!fourier) diss += rho * th * dpsi_dQ(m, s).dot(Qdot);
        out.sigma[i] = -diss / (th * th);

        const double ip_dot = rho * (ch.dPi_dtheta[0] * out.dtheta[i] + dPi_rest);
        electric_power += out.W[i] * ip_dot * dX;
        source_power += rho * r * dX;
    }

    // Boundary heat flux through the wall faces (ghost-cell average keeps
    // the discrete divergence telescoping exactly).
    const double qface_l = 0.5 * (gh.q_l + out.Qv[0]);
    const double qface_r = 0.5 * (gh.q_r + out.Qv[N - 1]);
    double power = qface_l - qface_r + electric_power + source_power;

    if (sim.dynamic) {
        const double s_face_l =
            sc.mech_left.kind == MechanicalBC::Kind::Free ? 0.0 : out.S[0];
        const double s_face_r =
            sc.mech_right.kind == MechanicalBC::Kind::Free ? 0.0 : out.S[N - 1];
        power += s_face_r * y.v[N] - s_face_l * y.v[0];
        if (sc.body_force) {
            for (int j = 0; j <= N; ++j) {
                const double w = (j == 0 || j == N) ? 0.5 * dX : dX;
                power += rho * sc.body_force(sim.Xf(j), y.t) * y.v[j] * w;
            }
        }
    }
    out.power = power;
}

double kinetic_energy(const Sim& sim, const GridState& y) {
    if (!sim.dynamic) return 0.0;
    const double rho = sim.sc.material.rho_R;
    double E = 0.0;
    for (int j = 0; j <= sim.N; ++j) {
        const double w = (j == 0 || j == sim.N) ? 0.5 * sim.dX : sim.dX;
        E += 0.5 * rho * y.v[j] * y.v[j] * w;
    }
    return E;
}

double internal_energy_total(const Sim& sim, const std::vector<double>& eps) {
    double E = 0.0;
    for (double e : eps) E += sim.sc.material.rho_R * e * sim.dX;
    return E;
}

void check_temperature(const GridState& y, int N) {
    for (int i = 0; i < N; ++i) {
        if (!(y.theta[i] > 0.0)) {
            std::ostringstream os;
            os << "temperature " << y.theta[i] << " <= 0 at cell " << i
               << ", t = " << y.t;
            throw NegativeTemperature(os.str());
        }
        if (!std::isfinite(y.theta[i]))
            throw NegativeTemperature("temperature diverged (non-finite)");
    }
}

double front_position(const Sim& sim, const std::vector<double>& theta) {
    if (sim.front_threshold <= 0) return -1.0;
    const int N = sim.N;
    for (int i = N - 1; i >= 0; --i) {
        const double di = std::fabs(theta[i] - sim.theta_base);
        if (di >= sim.front_threshold) {
            if (i == N - 1) return sim.Xc(i);
            const double dn = std::fabs(theta[i + 1] - sim.theta_base);
            const double frac = (di - sim.front_threshold) / std::fmax(di - dn, 1e-300);
            return sim.Xc(i) + std::fmin(1.0, std::fmax(0.0, frac)) * sim.dX;
        }
    }
    return -1.0;
}

Snapshot make_snapshot(const Sim& sim, const GridState& y, const StageEval& ev) {
    Snapshot s;
    s.t = y.t;
    const int N = sim.N;
    s.X.resize(N);
    for (int i = 0; i < N; ++i) s.X[i] = sim.Xc(i);
    s.F = y.F;
    s.theta = y.theta;
    s.Q = ev.Qv;
    s.W = ev.W;
    s.eta = ev.eta;
    s.eps = ev.eps;
    s.sigma_prod = ev.sigma;
    s.u.resize(N);
    s.v.resize(N);
    for (int i = 0; i < N; ++i) {
        s.u[i] = sim.dynamic ? 0.5 * (y.u[i] + y.u[i + 1]) : 0.0;
        s.v[i] = sim.dynamic ? 0.5 * (y.v[i] + y.v[i + 1]) : 0.0;
    }
    if (sim.dynamic) {
        s.S = ev.S;
    } else {
        s.S.resize(N);
        const MaterialModel& m = sim.sc.material;
        for (int i = 0; i < N; ++i) {
            const ReferentialState st =
                cell_state(y.F[i], y.theta[i], ev.W[i], y.Q[i], 0.0);
            s.S[i] = full_stress(m, st)(0, 0);
        }
    }
    return s;
}

struct SpeedScan {
    double c_elastic = 0;
    double c_second_sound = 0;
    double alpha_max = 0;   // thermal diffusivity, Fourier bound
    double tau_min = kInf;  // smallest relaxation time
};

SpeedScan scan_speeds(const Sim& sim, const GridState& y) {
    SpeedScan sp;
    const MaterialModel& m = sim.sc.material;
    const double rho = m.rho_R;
    for (int i = 0; i < sim.N; ++i) {
        const ReferentialState s = cell_state(y.F[i], y.theta[i], 0.0, 0.0, 0.0);
        const EnergyChainEval ch = energy_chain(m, s);
        const double cth = std::fmax(ch.deps_dtheta, 1e-300);
        const Mat3 K = m.conductivity(s.F, s.theta, s.W);
        if (sim.dynamic) {
            const double h = 1e-6;
            ReferentialState sp1 = s, sm1 = s;
            sp1.F(0, 0) += h;
            sm1.F(0, 0) -= h;
            const double dSdF =
                (full_stress(m, sp1)(0, 0) - full_stress(m, sm1)(0, 0)) / (2 * h);
            sp.c_elastic = std::fmax(sp.c_elastic, std::sqrt(std::fmax(dSdF, 0.0) / rho));
        }
        if (sim.sc.mode == SimMode::Cattaneo) {
            const Mat3 T = m.relaxation(s.F, s.theta, s.W);
            sp.tau_min = std::fmin(sp.tau_min, T(0, 0));
            sp.c_second_sound = std::fmax(
                sp.c_second_sound, std::sqrt(K(0, 0) / (rho * cth * T(0, 0))));
        } else {
            sp.alpha_max = std::fmax(sp.alpha_max, K(0, 0) / (rho * cth));
        }
    }
    return sp;
}

GridState initial_state(const Sim& sim) {
    const Scenario& sc = sim.sc;
    GridState y;
    y.t = 0;
    y.F.assign(sim.N, 1.0);
    y.theta.resize(sim.N);
    y.Q.resize(sim.N);
    for (int i = 0; i < sim.N; ++i) {
        y.theta[i] = eval_or(sc.theta0, sim.Xc(i), sim.theta_base);
        y.Q[i] = eval_or(sc.Q0, sim.Xc(i), 0.0);
    }
    if (sim.dynamic) {
        y.u.resize(sim.N + 1);
        y.v.resize(sim.N + 1);
        for (int j = 0; j <= sim.N; ++j) {
            y.u[j] = eval_or(sc.u0, sim.Xf(j), 0.0);
            y.v[j] = eval_or(sc.v0, sim.Xf(j), 0.0);
        }
        if (sc.mech_left.kind == MechanicalBC::Kind::Fixed) y.v[0] = 0;
        if (sc.mech_right.kind == MechanicalBC::Kind::Fixed) y.v[sim.N] = 0;
        if (sc.u0)
            for (int i = 0; i < sim.N; ++i)
                y.F[i] = 1.0 + (y.u[i + 1] - y.u[i]) / sim.dX;
    }
    return y;
}

}  // namespace

double auto_time_step(const Scenario& sc) {
    Sim sim(sc);
    const GridState y = initial_state(sim);
    const SpeedScan sp = scan_speeds(sim, y);
    const double dX = sim.dX;

    double dt = kInf;
    const double c_max = std::fmax(sp.c_elastic, sp.c_second_sound);
    if (c_max > 0) dt = std::fmin(dt, sc.cfl * dX / c_max);
    if (sc.mode == SimMode::Cattaneo && sp.c_second_sound > 0) {
        // Heun + central differences is only neutrally stable on the
        // undamped wave part; the Q-relaxation supplies damping when
        // dt^3 <= 4 dX^4 / (c^4 tau).
        const double c4 = std::pow(sp.c_second_sound, 4);
        dt = std::fmin(dt, 0.8 * std::cbrt(4.0 * std::pow(dX, 4) / (c4 * sp.tau_min)));
    }
    if (sim.dynamic && sp.c_elastic > 0 && sc.t_end > 0) {
        // Undamped elastic waves: keep the accumulated fourth-order
        // growth of the marginal modes below a fixed budget.
        const double nu = std::cbrt(0.8 * dX / (sp.c_elastic * sc.t_end));
        dt = std::fmin(dt, std::fmin(sc.cfl, nu) * dX / sp.c_elastic);
    }
    if (sc.mode == SimMode::Fourier && sp.alpha_max > 0)
        dt = std::fmin(dt, 0.45 * dX * dX / sp.alpha_max);
    if (!std::isfinite(dt))
        throw Error("auto time step: no finite propagation speed found");
    return dt;
}

SimResult run_scenario(const Scenario& sc) {
    if (sc.N < 8) throw ConfigError("scenario requires N >= 8");
    if (sc.t_end < 0) throw ConfigError("scenario requires t_end >= 0");

    Sim sim(sc);
    GridState y = initial_state(sim);
    check_temperature(y, sim.N);

    // Pulse height fixes the front-tracking level set.
    for (int i = 0; i < sim.N; ++i)
        sim.pulse_height = std::fmax(sim.pulse_height, std::fabs(y.theta[i] - sim.theta_base));
    sim.front_threshold = 1e-3 * sim.pulse_height;

    SimResult result;
    RunReport& rep = result.report;
    const SpeedScan sp = scan_speeds(sim, y);
    rep.c_elastic = sp.c_elastic;
    rep.c_second_sound = sp.c_second_sound;
    rep.dX = sim.dX;
    rep.front_threshold = sim.front_threshold;

    double dt = sc.dt;
    if (!(dt > 0)) {
        dt = auto_time_step(sc);
    } else {
        const double c_max = std::fmax(sp.c_elastic, sp.c_second_sound);
        if (c_max > 0 && dt > sim.dX / c_max) {
            std::ostringstream os;
            os << "dt = " << dt << " exceeds dX/c = " << sim.dX / c_max;
            throw CFLViolation(os.str());
        }
    }

    int steps = 0;
    if (sc.t_end > 0) {
        steps = std::max(1, static_cast<int>(std::ceil(sc.t_end / dt - 1e-12)));
        dt = sc.t_end / steps;
    }
    rep.steps = steps;
    rep.dt = dt;

    rep.clausius_duhem_min = kInf;
    rep.sigma_min = kInf;
    rep.sigma_max = -kInf;

    StageEval s1, s2, tmp;
    std::vector<double> W_state(sim.N, 0.0);
    solve_electric(sim, y.F, y.theta, y.Q, W_state);
    std::vector<double> W_prev = W_state;
    double dt_prev = 0;

    eval_stage(sim, y, W_prev, dt_prev, s1);

    const auto track_sigma = [&](const StageEval& ev) {
        for (double s : ev.sigma) {
            rep.sigma_min = std::fmin(rep.sigma_min, s);
            rep.sigma_max = std::fmax(rep.sigma_max, s);
        }
    };
    track_sigma(s1);

    const auto record = [&](const GridState& state, const StageEval& ev) {
        result.snapshots.push_back(make_snapshot(sim, state, ev));
        const double xf = front_position(sim, state.theta);
        if (xf >= 0) rep.front_positions.emplace_back(state.t, xf);
    };
    record(y, s1);

    double E_prev = internal_energy_total(sim, s1.eps) + kinetic_energy(sim, y);
    double integrated_power = 0.0;

    const double rho = sc.material.rho_R;
    GridState ymid, ynext;

    for (int n = 0; n < steps; ++n) {
        // Predictor.
        ymid = y;
        ymid.t = y.t + dt;
        for (int i = 0; i < sim.N; ++i) {
            ymid.theta[i] += dt * s1.dtheta[i];
            if (sc.mode == SimMode::Cattaneo) ymid.Q[i] += dt * s1.dQ[i];
            if (sim.dynamic) ymid.F[i] += dt * s1.dF[i];
        }
        if (sim.dynamic)
            for (int j = 0; j <= sim.N; ++j) {
                ymid.v[j] += dt * s1.dv[j];
                ymid.u[j] += dt * y.v[j];
            }
        check_temperature(ymid, sim.N);

        eval_stage(sim, ymid, s1.W, dt, s2);
        track_sigma(s2);

        // Corrector.
        ynext = y;
        ynext.t = y.t + dt;
        for (int i = 0; i < sim.N; ++i) {
            ynext.theta[i] += 0.5 * dt * (s1.dtheta[i] + s2.dtheta[i]);
            if (sc.mode == SimMode::Cattaneo)
                ynext.Q[i] += 0.5 * dt * (s1.dQ[i] + s2.dQ[i]);
            if (sim.dynamic) ynext.F[i] += 0.5 * dt * (s1.dF[i] + s2.dF[i]);
        }
        if (sim.dynamic)
            for (int j = 0; j <= sim.N; ++j) {
                ynext.v[j] += 0.5 * dt * (s1.dv[j] + s2.dv[j]);
                ynext.u[j] += 0.5 * dt * (y.v[j] + ymid.v[j]);
            }
        check_temperature(ynext, sim.N);

        W_prev = s1.W;
        dt_prev = dt;
        const std::vector<double> supply1 = s1.supply;
        const std::vector<double> eta_prev = s1.eta;
        const double power1 = s1.power;

        y = ynext;
        eval_stage(sim, y, W_prev, dt_prev, s1);
        track_sigma(s1);

        // Close this step's ledgers with the freshly evaluated state.
        for (int i = 0; i < sim.N; ++i) {
            const double production =
                rho * (s1.eta[i] - eta_prev[i]) - 0.5 * dt * (supply1[i] + s2.supply[i]);
            rep.clausius_duhem_min = std::fmin(rep.clausius_duhem_min, production);
        }
        const double E_now = internal_energy_total(sim, s1.eps) + kinetic_energy(sim, y);
        const double step_power = 0.5 * dt * (power1 + s2.power);
        integrated_power += step_power;
        rep.energy_residual_max =
            std::fmax(rep.energy_residual_max, std::fabs(E_now - E_prev - step_power));
        rep.energy_residual_total += E_now - E_prev - step_power;
        E_prev = E_now;

        if ((n + 1) % sc.output_stride == 0 || n + 1 == steps) record(y, s1);
    }

    rep.energy_residual_total = std::fabs(rep.energy_residual_total);
    if (rep.clausius_duhem_min == kInf) rep.clausius_duhem_min = 0;
    if (rep.sigma_min == kInf) rep.sigma_min = 0;
    if (rep.sigma_max == -kInf) rep.sigma_max = 0;

    // Front speed: least-squares slope over the established half of the run.
    {
        std::vector<std::pair<double, double>> pts;
        for (const auto& [t, x] : rep.front_positions)
            if (t >= 0.5 * sc.t_end && x < sc.L - 2 * sim.dX) pts.emplace_back(t, x);
        if (pts.size() >= 2) {
            double st = 0, sx = 0, stt = 0, stx = 0;
            for (const auto& [t, x] : pts) {
                st += t;
                sx += x;
                stt += t * t;
                stx += t * x;
            }
            const double n = static_cast<double>(pts.size());
            const double denom = n * stt - st * st;
            if (std::fabs(denom) > 1e-300) rep.front_speed = (n * stx - st * sx) / denom;
        }
    }

    return result;
}

std::function<double(double)> uniform_field(double value) {
    return [value](double) { return value; };
}

std::function<double(double)> gaussian_pulse(double base, double amplitude, double center,
                                             double width) {
    return [=](double X) {
        const double z = (X - center) / width;
        return base + amplitude * std::exp(-0.5 * z * z);
    };
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json j;
    j["steps"] = steps;
    j["dt"] = dt;
    j["dX"] = dX;
    j["c_elastic"] = c_elastic;
    j["c_second_sound"] = c_second_sound;
    j["energy_residual_max"] = energy_residual_max;
    j["energy_residual_total"] = energy_residual_total;
    j["clausius_duhem_min"] = clausius_duhem_min;
    j["sigma_min"] = sigma_min;
    j["sigma_max"] = sigma_max;
    j["front_speed"] = front_speed;
    j["front_threshold"] = front_threshold;
    j["front_positions"] = nlohmann::json::array();
    for (const auto& [t, x] : front_positions) j["front_positions"].push_back({t, x});
    return j;
}

void write_snapshot_csv(const std::vector<Snapshot>& snaps, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << "t,X,u,v,F,theta,Q,W,S,eta,eps,sigma_prod\n";
    char buf[64];
    const auto put = [&](double x, char sep) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out << buf << sep;
    };
    for (const Snapshot& s : snaps) {
        for (std::size_t i = 0; i < s.X.size(); ++i) {
            put(s.t, ',');
            put(s.X[i], ',');
            put(s.u[i], ',');
            put(s.v[i], ',');
            put(s.F[i], ',');
            put(s.theta[i], ',');
            put(s.Q[i], ',');
            put(s.W[i], ',');
            put(s.S[i], ',');
            put(s.eta[i], ',');
            put(s.eps[i], ',');
            put(s.sigma_prod[i], '\n');
        }
    }
}

}  // namespace secondsound
