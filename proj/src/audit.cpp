#include "secondsound/audit.hpp"

#include <cmath>
#include <random>

#include "secondsound/kinematics.hpp"

namespace secondsound {
namespace {

nlohmann::json state_to_json(const ReferentialState& s) {
    nlohmann::json j;
    j["F"] = s.F.m;
    j["theta"] = s.theta;
    j["W"] = s.W.v;
    j["Q"] = s.Q.v;
    j["G"] = s.G.v;
    return j;
}

Vec3 random_direction(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec3 d{gauss(rng), gauss(rng), gauss(rng)};
    double n = d.norm();
    while (n < 1e-8) {
        d = Vec3{gauss(rng), gauss(rng), gauss(rng)};
        n = d.norm();
    }
    return d / n;
}

// Collects the worst (largest, signed) residual over the sampled states.
struct Worst {
    bool any = false;
    double residual = 0;
    ReferentialState state;

    void offer(double r, const ReferentialState& s) {
        if (!any || r > residual) {
            any = true;
            residual = r;
            state = s;
        }
    }
};

CheckResult finish(const std::string& name, const Worst& w, double tol) {
    CheckResult c;
    c.name = name;
    c.residual = w.residual;
    c.tol = tol;
    c.pass = w.residual <= tol;
    c.worst = w.state;
    return c;
}

double pd_margin(const Mat3& M) {
    const Mat3 S = M.sym();
    static const Vec3 probes[] = {
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
        {1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1},
        {1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {1, 1, -1},
    };
    double margin = S(0, 0);
    for (const Vec3& x : probes)
        margin = std::fmin(margin, x.dot(S * x) / x.dot(x));
    margin = std::fmin(margin, S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0));
    margin = std::fmin(margin, S.det());
    return margin;
}

}  // namespace

std::vector<ReferentialState> sample_states(int count, std::uint64_t seed,
                                            double theta_ref) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u11(-1.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> utheta(0.5, 2.0);

    std::vector<ReferentialState> states;
    states.reserve(count);
    for (int n = 0; n < count; ++n) {
        ReferentialState s;
        do {
            Mat3 U;
            for (double& x : U.m) x = u11(rng);
            s.F = Mat3::identity() + U * 0.3;
        } while (!(s.F.det() > 0.2));
        s.theta = theta_ref * utheta(rng);
        s.W = random_direction(rng) * u01(rng);
        s.Q = random_direction(rng) * u01(rng);
        s.G = random_direction(rng) * u01(rng);
        states.push_back(s);
    }
    return states;
}

nlohmann::json AuditReport::to_json() const {
    nlohmann::json j;
    j["model"] = model;
    j["seed"] = seed;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["residual"] = c.residual;
        jc["tol"] = c.tol;
        jc["pass"] = c.pass;
        jc["state"] = state_to_json(c.worst);
        j["checks"].push_back(jc);
    }
    j["verdict"] = pass ? "pass" : "fail";
    j["notes"] = notes;
    return j;
}

AuditReport coleman_noll_audit(const MaterialModel& m, int samples, std::uint64_t seed,
                               const FDScheme& scheme, const AuditTolerances& tols) {
    AuditReport rep;
    rep.model = m.name;
    rep.seed = seed;
    rep.notes.push_back(
        "polarization response carries the gradient-consistent Q-quadratic term "
        "whenever Z depends on W");

    const auto states = sample_states(samples, seed, m.theta_ref);
    const ScalarStateFn psi = [&m](const ReferentialState& s) {
        return full_free_energy(m, s);
    };

    Worst w_eta, w_stress, w_pi, w_gind, w_diss, w_pd, w_sym, w_eq;

    for (const ReferentialState& s : states) {
        // (1) entropy = -d(psi)/dtheta
        {
            const double eta_impl = full_entropy(m, s);
            const double eta_fd = -fd_gradient_theta(psi, s, scheme);
            const double rel = std::fabs(eta_impl - eta_fd) / std::fmax(1.0, std::fabs(eta_impl));
            w_eta.offer(rel, s);
        }
        // (2) S = rho_R d(psi)/dF
        {
            const Mat3 S_impl = full_stress(m, s);
            const Mat3 S_fd = fd_gradient_F(psi, s, scheme) * m.rho_R;
            const double rel = (S_impl - S_fd).norm_inf() / std::fmax(1.0, S_impl.norm_inf());
            w_stress.offer(rel, s);
        }
        // (3) Pi = -d(psi)/dW
        {
            const Vec3 Pi_impl = full_polarization(m, s);
            const Vec3 Pi_fd = -1.0 * fd_gradient_vec(psi, s, VecSlot::W, scheme);
            const double rel =
                (Pi_impl - Pi_fd).norm_inf() / std::fmax(1.0, Pi_impl.norm_inf());
            w_pi.offer(rel, s);
        }
        // (4) psi independent of G
        {
            const double psi_ref = psi(s);
            double worst = 0;
            for (int l = 0; l < 3; ++l) {
                for (double mag : {0.5, 1.0}) {
                    ReferentialState sp = s;
                    sp.G[l] += mag;
                    worst = std::fmax(worst, std::fabs(psi(sp) - psi_ref));
                }
            }
            w_gind.offer(worst / std::fmax(1.0, std::fabs(psi_ref)), s);
        }
        // (5) reduced dissipation inequality
        w_diss.offer(reduced_dissipation_lhs(m, s), s);
        // (6) K positive-definite, Z symmetric
        {
            const Mat3 K = m.conductivity(s.F, s.theta, s.W);
            w_pd.offer(tols.pd_tol - pd_margin(K), s);
            const Mat3 Z = z_tensor(m, s.F, s.theta, s.W);
            double asym = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    asym = std::fmax(asym, std::fabs(Z(i, j) - Z(j, i)));
            w_sym.offer(asym / std::fmax(1.0, Z.norm_inf()), s);
        }
        // (7) evolution rate vanishes at thermal equilibrium
        {
            ReferentialState eq = s;
            eq.Q = Vec3::zero();
            eq.G = Vec3::zero();
            w_eq.offer(heat_flux_rate(m, eq).norm_inf(), eq);
        }
    }

    rep.checks.push_back(finish("entropy_gradient", w_eta, tols.gradient_rel));
    rep.checks.push_back(finish("stress_gradient", w_stress, tols.gradient_rel));
    rep.checks.push_back(finish("polarization_gradient", w_pi, tols.gradient_rel));
    rep.checks.push_back(finish("psi_g_independence", w_gind, tols.g_independence));
    rep.checks.push_back(finish("reduced_dissipation", w_diss, tols.dissipation_slack));
    rep.checks.push_back(finish("conductivity_positive_definite", w_pd, 0.0));
    rep.checks.push_back(finish("z_symmetry", w_sym, tols.symmetry_tol));
    rep.checks.push_back(finish("equilibrium_rate_zero", w_eq, 0.0));

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

}  // namespace secondsound
