#include "secondsound/fourier.hpp"

#include <cmath>

#include "secondsound/kinematics.hpp"

namespace secondsound {
namespace {

ReferentialState zero_q(const ReferentialState& s) {
    ReferentialState z = s;
    z.Q = Vec3::zero();
    return z;
}

}  // namespace

FourierModel fourier_from_cattaneo(const MaterialModel& m) {
    FourierModel fm;
    fm.base = m;
    fm.base.name = m.name + "_fourier";
    fm.q_fn = [K = m.conductivity](const Mat3& F, double theta, const Vec3& W,
                                   const Vec3& G) { return -(K(F, theta, W) * G); };
    return fm;
}

double fourier_free_energy(const FourierModel& fm, const ReferentialState& at) {
    return full_free_energy(fm.base, zero_q(at));
}

double fourier_entropy(const FourierModel& fm, const ReferentialState& at) {
    return full_entropy(fm.base, zero_q(at));
}

double fourier_internal_energy(const FourierModel& fm, const ReferentialState& at) {
    return full_internal_energy(fm.base, zero_q(at));
}

Mat3 fourier_stress(const FourierModel& fm, const ReferentialState& at) {
    return full_stress(fm.base, zero_q(at));
}

Vec3 fourier_polarization(const FourierModel& fm, const ReferentialState& at) {
    return full_polarization(fm.base, zero_q(at));
}

Mat3 fourier_cauchy_stress(const FourierModel& fm, const ReferentialState& at) {
    return cauchy_stress(fm.base, zero_q(at));
}

double fourier_internal_dissipation(const FourierModel&, const ReferentialState&) {
    // No d(psi)/dq channel exists in this theory.
    return 0.0;
}

double fourier_entropy_balance_residual(const FourierModel& fm, const TrajectorySample& s) {
    const double J = kinematics_from_F(s.at.F).J;
    const double rho = fm.base.rho_R / J;
    const double eta_dot =
        (fourier_entropy(fm, s.at_next) - fourier_entropy(fm, s.at)) / s.dt;
    const double div_q = s.div_Q / J;
    return std::fabs(rho * eta_dot - rho * s.r / s.at.theta + div_q / s.at.theta);
}

namespace {

// Synthetic admissible increment: mechanics frozen, theta ramped, Q from
// the flux response; the heating r is solved from the energy balance so
// the entropy equality must close as dt -> 0.
TrajectorySample make_admissible_sample(const FourierModel& fm, const ReferentialState& s,
                                        double dt) {
    TrajectorySample ts;
    ts.dt = dt;
    ts.div_Q = 0.3;

    ts.at = s;
    ts.at.Q = fm.q_fn(s.F, s.theta, s.W, s.G);
    ts.at_next = ts.at;
    ts.at_next.theta = s.theta * (1.0 + 0.05 * dt);
    ts.at_next.Q = fm.q_fn(s.F, ts.at_next.theta, s.W, s.G);

    const double rho_R = fm.base.rho_R;
    const double eps_dot =
        (fourier_internal_energy(fm, ts.at_next) - fourier_internal_energy(fm, ts.at)) / dt;
    const Vec3 IP_dot = (fourier_polarization(fm, ts.at_next) * rho_R -
                         fourier_polarization(fm, ts.at) * rho_R) / dt;
    // rho_R deps/dt = S:dF/dt - Div Q + W.dIP/dt + rho_R r, with dF/dt = 0.
    ts.r = eps_dot + ts.div_Q / rho_R - s.W.dot(IP_dot) / rho_R;
    return ts;
}

}  // namespace

AuditReport fourier_audit(const FourierModel& fm, int samples, std::uint64_t seed,
                          const FDScheme& scheme, const AuditTolerances& tols) {
    AuditReport rep;
    rep.model = fm.name();
    rep.seed = seed;

    const auto states = sample_states(samples, seed, fm.base.theta_ref);
    const ScalarStateFn psi = [&fm](const ReferentialState& s) {
        return fourier_free_energy(fm, s);
    };

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
    Worst w_eta, w_tau, w_pi, w_gind, w_fourier, w_static, w_diss, w_enteq;

    for (const ReferentialState& s : states) {
        // entropy = -d(psi)/dtheta
        {
            const double eta_impl = fourier_entropy(fm, s);
            const double eta_fd = -fd_gradient_theta(psi, s, scheme);
            w_eta.offer(std::fabs(eta_impl - eta_fd) / std::fmax(1.0, std::fabs(eta_impl)), s);
        }
        // Cauchy stress two ways: referential Piola route vs the spatial
        // derivative route tau_ij = rho F_iK d(psibar)/dF_jK at fixed E_M.
        {
            const Vec3 E_M = push_covector(s.F, s.W);
            const Mat3 tau_ref = fourier_cauchy_stress(fm, s);

            const auto psibar = [&](const Mat3& F) {
                return fm.base.psi0(F, s.theta, pull_covector(F, E_M));
            };
            Mat3 grad;
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    const double h = scheme.step(s.F(r, c));
                    Mat3 Fp = s.F, Fmn = s.F;
                    Fp(r, c) += h;
                    Fmn(r, c) -= h;
                    grad(r, c) = (psibar(Fp) - psibar(Fmn)) / (2 * h);
                }
            const double rho = fm.base.rho_R / kinematics_from_F(s.F).J;
            const Mat3 tau_spatial = (s.F * grad.transpose()) * rho;
            w_tau.offer((tau_ref - tau_spatial).norm_inf() /
                            std::fmax(1.0, tau_ref.norm_inf()),
                        s);
        }
        // Pi = -d(psi)/dW
        {
            const Vec3 Pi_impl = fourier_polarization(fm, s);
            const Vec3 Pi_fd = -1.0 * fd_gradient_vec(psi, s, VecSlot::W, scheme);
            w_pi.offer((Pi_impl - Pi_fd).norm_inf() / std::fmax(1.0, Pi_impl.norm_inf()), s);
        }
        // psi independent of G
        {
            const double psi_ref = psi(s);
            double worst = 0;
            for (int l = 0; l < 3; ++l) {
                ReferentialState sp = s;
                sp.G[l] += 1.0;
                worst = std::fmax(worst, std::fabs(psi(sp) - psi_ref));
            }
            w_gind.offer(worst / std::fmax(1.0, std::fabs(psi_ref)), s);
        }
        // Fourier inequality Q.G <= 0
        {
            const Vec3 Q = fm.q_fn(s.F, s.theta, s.W, s.G);
            w_fourier.offer(Q.dot(s.G), s);
        }
        // static flux vanishes
        w_static.offer(fm.q_fn(s.F, s.theta, s.W, Vec3::zero()).norm_inf(), s);
        // internal dissipation identically zero
        w_diss.offer(std::fabs(fourier_internal_dissipation(fm, s)), s);
        // entropy equality closes at first order in dt
        {
            const double r1 = fourier_entropy_balance_residual(
                fm, make_admissible_sample(fm, s, 1e-3));
            const double r2 = fourier_entropy_balance_residual(
                fm, make_admissible_sample(fm, s, 5e-4));
            const double ratio = r2 / std::fmax(r1, 1e-300);
            w_enteq.offer(r1 < 1e-12 ? 0.0 : ratio, s);
        }
    }

    const auto finish = [](const std::string& name, const Worst& w, double tol) {
        CheckResult c;
        c.name = name;
        c.residual = w.residual;
        c.tol = tol;
        c.pass = w.residual <= tol;
        c.worst = w.state;
        return c;
    };

    rep.checks.push_back(finish("entropy_gradient", w_eta, tols.gradient_rel));
    rep.checks.push_back(finish("cauchy_stress_dual_route", w_tau, tols.gradient_rel));
    rep.checks.push_back(finish("polarization_gradient", w_pi, tols.gradient_rel));
    rep.checks.push_back(finish("psi_g_independence", w_gind, tols.g_independence));
    rep.checks.push_back(finish("fourier_inequality", w_fourier, tols.dissipation_slack));
    rep.checks.push_back(finish("static_flux_zero", w_static, 0.0));
    rep.checks.push_back(finish("internal_dissipation_zero", w_diss, 0.0));
    // first-order convergence: halving dt should at least halve the
    // residual, up to a small margin
    rep.checks.push_back(finish("entropy_equality_order", w_enteq, 0.65));

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

}  // namespace secondsound
