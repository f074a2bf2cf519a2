#include "secondsound/constitutive.hpp"

#include <cmath>

#include "secondsound/errors.hpp"
#include "secondsound/kinematics.hpp"

namespace secondsound {
namespace {

const FDScheme kDefaultScheme{};

Mat3 invert_K(const Mat3& K) {
    try {
        return inverse(K);
    } catch (const NonInvertibleF&) {
        throw SingularK("steady-state conductivity K is singular");
    }
}

Mat3 invert_T(const Mat3& T) {
    try {
        return inverse(T);
    } catch (const NonInvertibleF&) {
        throw SingularT("relaxation-time tensor T is singular");
    }
}

ScalarStateFn psi0_fn(const MaterialModel& m) {
    return [&m](const ReferentialState& s) { return m.psi0(s.F, s.theta, s.W); };
}

MatStateFn z_fn(const MaterialModel& m) {
    return [&m](const ReferentialState& s) { return z_tensor(m, s.F, s.theta, s.W); };
}

double eta0(const MaterialModel& m, const ReferentialState& at) {
    if (m.dpsi0_dtheta) return -m.dpsi0_dtheta(at.F, at.theta, at.W);
    return -fd_gradient_theta(psi0_fn(m), at, kDefaultScheme);
}

Mat3 stress0(const MaterialModel& m, const ReferentialState& at) {
    if (m.dpsi0_dF) return m.dpsi0_dF(at.F, at.theta, at.W) * m.rho_R;
    return fd_gradient_F(psi0_fn(m), at, kDefaultScheme) * m.rho_R;
}

Vec3 polarization0(const MaterialModel& m, const ReferentialState& at) {
    if (m.dpsi0_dW) return -m.dpsi0_dW(at.F, at.theta, at.W);
    return -fd_gradient_vec(psi0_fn(m), at, VecSlot::W, kDefaultScheme);
}

Mat3 z_prime(const MaterialModel& m, const ReferentialState& at) {
    if (m.dZ_dtheta) return m.dZ_dtheta(at.F, at.theta, at.W);
    return fd_derivative_theta(z_fn(m), at, kDefaultScheme);
}

}  // namespace

Mat3 z_tensor(const MaterialModel& m, const Mat3& F, double theta, const Vec3& W) {
    const Mat3 K = m.conductivity(F, theta, W);
    const Mat3 T = m.relaxation(F, theta, W);
    return invert_K(K) * T;
}

DerivedTensors derived_tensors(const MaterialModel& m, const ReferentialState& at,
                               const FDScheme& scheme) {
    DerivedTensors d;
    d.Z = z_tensor(m, at.F, at.theta, at.W);

    const MatStateFn z = z_fn(m);
    const MatStateFn z_over_theta = [&z](const ReferentialState& s) {
        return z(s) / s.theta;
    };
    const MatStateFn z_over_theta2 = [&z](const ReferentialState& s) {
        return z(s) / (s.theta * s.theta);
    };
    d.B = fd_derivative_theta(z_over_theta, at, scheme) * -0.5;
    d.A = fd_derivative_theta(z_over_theta2, at, scheme) * (-0.5 * at.theta * at.theta);

    if (m.z_constant_in_F) {
        d.P_F = Rank4::zero();
    } else {
        d.P_F = fd_derivative_F(z, at, scheme);
        for (double& x : d.P_F.d) x /= 2.0 * at.theta;
    }
    return d;
}

Mat3 coupling_B(const MaterialModel& m, const ReferentialState& at) {
    const Mat3 Z = z_tensor(m, at.F, at.theta, at.W);
    const Mat3 Zp = z_prime(m, at);
    const double th = at.theta;
    // B = -1/2 d/dtheta (Z/theta) = Z/(2 theta^2) - Z'/(2 theta)
    return Z / (2 * th * th) - Zp / (2 * th);
}

Mat3 coupling_A(const MaterialModel& m, const ReferentialState& at) {
    const Mat3 Z = z_tensor(m, at.F, at.theta, at.W);
    const Mat3 Zp = z_prime(m, at);
    return Z / at.theta - Zp * 0.5;
}

double full_free_energy(const MaterialModel& m, const ReferentialState& at) {
    const Mat3 Z = z_tensor(m, at.F, at.theta, at.W);
    double psi = m.psi0(at.F, at.theta, at.W)
               + at.Q.dot(Z * at.Q) / (2.0 * at.theta * m.rho_R);
    if (m.psi_extra) psi += m.psi_extra(at);
    return psi;
}

double full_entropy(const MaterialModel& m, const ReferentialState& at) {
    const Mat3 B = coupling_B(m, at);
    return eta0(m, at) + at.Q.dot(B * at.Q) / m.rho_R;
}

double full_internal_energy(const MaterialModel& m, const ReferentialState& at) {
    const double psi0v = m.psi0(at.F, at.theta, at.W);
    const double eta0v = eta0(m, at);
    const Vec3 Pi0 = polarization0(m, at);
    const double eps0 = psi0v + at.theta * eta0v + at.W.dot(Pi0);
    const Mat3 A = coupling_A(m, at);
    return eps0 + at.Q.dot(A * at.Q) / m.rho_R;
}

Mat3 full_stress(const MaterialModel& m, const ReferentialState& at) {
    Mat3 S = stress0(m, at);
    if (!m.z_constant_in_F) {
        Rank4 dZdF = fd_derivative_F(z_fn(m), at, kDefaultScheme);
        const Mat3 corr = dZdF.contract_leading(at.Q, at.Q) / (2.0 * at.theta);
        S += corr;
    }
    return S;
}

Vec3 full_polarization(const MaterialModel& m, const ReferentialState& at) {
    Vec3 Pi = polarization0(m, at);
    if (!m.z_constant_in_W) {
        const auto dZdW = fd_derivative_W(z_fn(m), at, kDefaultScheme);
        for (int l = 0; l < 3; ++l)
            Pi[l] -= at.Q.dot(dZdW[l] * at.Q) / (2.0 * at.theta * m.rho_R);
    }
    return Pi;
}

Vec3 dpsi_dQ(const MaterialModel& m, const ReferentialState& at) {
    const Mat3 Z = z_tensor(m, at.F, at.theta, at.W);
    return (Z.sym() * at.Q) / (at.theta * m.rho_R);
}

Vec3 heat_flux_rate(const MaterialModel& m, const ReferentialState& at) {
    const Mat3 K = m.conductivity(at.F, at.theta, at.W);
    const Mat3 Tinv = invert_T(m.relaxation(at.F, at.theta, at.W));
    return -(Tinv * (at.Q + K * at.G));
}

Vec3 invert_evolution(const MaterialModel& m, const Mat3& F, double theta, const Vec3& W,
                      const Vec3& G, const Vec3& Q_dot) {
    const Mat3 T = m.relaxation(F, theta, W);
    if (!(std::fabs(T.det()) > kDetFThreshold))
        throw SingularT("relaxation-time tensor T is singular");
    const Mat3 K = m.conductivity(F, theta, W);
    return -(K * G) - T * Q_dot;
}

double reduced_dissipation_lhs(const MaterialModel& m, const ReferentialState& at) {
    const Vec3 H = heat_flux_rate(m, at);
    return m.rho_R * at.theta * dpsi_dQ(m, at).dot(H) + at.Q.dot(at.G);
}

double internal_dissipation(const MaterialModel& m, const ReferentialState& at) {
    const double J = kinematics_from_F(at.F).J;
    const double rho = m.rho_R / J;
    const Vec3 H = heat_flux_rate(m, at);
    return -rho * dpsi_dQ(m, at).dot(H);
}

double entropy_balance_residual(const MaterialModel& m, const TrajectorySample& s) {
    const double J = kinematics_from_F(s.at.F).J;
    const double rho = m.rho_R / J;
    const double theta = s.at.theta;

    const double eta_dot = (full_entropy(m, s.at_next) - full_entropy(m, s.at)) / s.dt;
    const double div_q = s.div_Q / J;

    const Vec3 q_now = push_heat_flux(s.at.F, s.at.Q);
    const Vec3 q_next = push_heat_flux(s.at_next.F, s.at_next.Q);
    const Vec3 q_dot = (q_next - q_now) / s.dt;
    const Vec3 dpsi_dq = (inverse(s.at.F).transpose() * dpsi_dQ(m, s.at)) * J;

    return std::fabs(rho * eta_dot - rho * s.r / theta + div_q / theta +
                     rho * dpsi_dq.dot(q_dot));
}

Vec3 spatial_polarization(const MaterialModel& m, const ReferentialState& at) {
    const Vec3 IP = full_polarization(m, at) * m.rho_R;
    return push_heat_flux(at.F, IP);
}

Mat3 cauchy_from_piola(const Mat3& F, const Mat3& S, const Vec3& P_spatial,
                       const Vec3& E_M) {
    const double J = F.det();
    return (S * F.transpose()) / J - outer(P_spatial, E_M);
}

Mat3 piola_from_cauchy(const Mat3& F, const Mat3& tau, const Vec3& P_spatial,
                       const Vec3& E_M) {
    const double J = F.det();
    return ((tau + outer(P_spatial, E_M)) * inverse(F).transpose()) * J;
}

Mat3 cauchy_stress(const MaterialModel& m, const ReferentialState& at, const Vec3& E_M) {
    const Mat3 S = full_stress(m, at);
    const Vec3 P = spatial_polarization(m, at);
    return cauchy_from_piola(at.F, S, P, E_M);
}

Mat3 cauchy_stress(const MaterialModel& m, const ReferentialState& at) {
    const Vec3 E_M = push_covector(at.F, at.W);
    return cauchy_stress(m, at, E_M);
}

ConstitutiveOutput evaluate(const MaterialModel& m, const ReferentialState& at) {
    ConstitutiveOutput out;
    out.psi = full_free_energy(m, at);
    out.eta = full_entropy(m, at);
    out.eps = full_internal_energy(m, at);
    out.S = full_stress(m, at);
    out.Pi = full_polarization(m, at);
    out.Q_dot = heat_flux_rate(m, at);
    out.delta0 = internal_dissipation(m, at);
    out.tau_cauchy = cauchy_stress(m, at);
    return out;
}

ObjectivityResiduals objectivity_check(const MaterialModel& m, const ReferentialState& at,
                                       const std::vector<Mat3>& rotations) {
    ObjectivityResiduals res;
    const double psi_ref = full_free_energy(m, at);
    const Mat3 tau_ref = cauchy_stress(m, at);
    for (const Mat3& R : rotations) {
        if (!is_rotation(R)) throw NotARotation("objectivity check: matrix is not a rotation");
        ReferentialState rot = at;
        rot.F = R * at.F;
        const double dpsi = std::fabs(full_free_energy(m, rot) - psi_ref);
        const Mat3 tau_rot = cauchy_stress(m, rot);
        const Mat3 tau_push = R * tau_ref * R.transpose();
        res.psi_max = std::fmax(res.psi_max, dpsi);
        res.tau_max = std::fmax(res.tau_max, (tau_rot - tau_push).norm_inf());
    }
    return res;
}

bool has_closed_form_chain(const MaterialModel& m) {
    return m.has_analytic_gradients() && m.d2psi0_dtheta2 && m.d2psi0_dF_dtheta &&
           m.d2psi0_dW_dtheta && m.d2psi0_dW_dW && m.dZ_dtheta && m.d2Z_dtheta2 &&
           m.z_constant_in_F && m.z_constant_in_W;
}

EnergyChainEval energy_chain(const MaterialModel& m, const ReferentialState& at) {
    EnergyChainEval e;
    const double rho = m.rho_R;

    if (has_closed_form_chain(m)) {
        const Mat3& F = at.F;
        const double th = at.theta;
        const Vec3& W = at.W;
        const Vec3& Q = at.Q;

        const double psi0v = m.psi0(F, th, W);
        const double eta0v = -m.dpsi0_dtheta(F, th, W);
        const Vec3 Pi0 = -1.0 * m.dpsi0_dW(F, th, W);
        const double deta0_dtheta = -m.d2psi0_dtheta2(F, th, W);
        const Mat3 deta0_dF = m.d2psi0_dF_dtheta(F, th, W) * -1.0;
        const Vec3 deta0_dW = m.d2psi0_dW_dtheta(F, th, W) * -1.0;
        const Vec3 dPi0_dtheta = m.d2psi0_dW_dtheta(F, th, W) * -1.0;
        const Mat3 dPi0_dW = m.d2psi0_dW_dW(F, th, W) * -1.0;

        const Mat3 Z = z_tensor(m, F, th, W);
        const Mat3 Zp = m.dZ_dtheta(F, th, W);
        const Mat3 Zpp = m.d2Z_dtheta2(F, th, W);
        const Mat3 A = Z / th - Zp * 0.5;
        const Mat3 B = Z / (2 * th * th) - Zp / (2 * th);
        const Mat3 dA_dtheta = Zp / th - Z / (th * th) - Zpp * 0.5;

        e.eps = psi0v + th * eta0v + W.dot(Pi0) + Q.dot(A * Q) / rho;
        e.eta = eta0v + Q.dot(B * Q) / rho;
        e.deps_dtheta = th * deta0_dtheta + W.dot(dPi0_dtheta) + Q.dot(dA_dtheta * Q) / rho;
        e.deps_dF = m.dpsi0_dF(F, th, W) + deta0_dF * th;
        e.deps_dW = deta0_dW * th + dPi0_dW * W;
        e.deps_dQ = (A.sym() * Q) * (2.0 / rho);
        e.Pi = Pi0;
        e.dPi_dtheta = dPi0_dtheta;
        e.dPi_dW = dPi0_dW;
        e.dPi_dQ = Mat3::zero();
        return e;
    }

    // Finite-difference fallback for models without closed forms.
    const FDScheme& sc = kDefaultScheme;
    const ScalarStateFn eps_fn = [&m](const ReferentialState& s) {
        return full_internal_energy(m, s);
    };
    e.eps = eps_fn(at);
    e.eta = full_entropy(m, at);
    e.deps_dtheta = fd_gradient_theta(eps_fn, at, sc);
    e.deps_dF = fd_gradient_F(eps_fn, at, sc);
    e.deps_dW = fd_gradient_vec(eps_fn, at, VecSlot::W, sc);
    e.deps_dQ = fd_gradient_vec(eps_fn, at, VecSlot::Q, sc);
    e.Pi = full_polarization(m, at);

    const auto pi_component = [&m](const ReferentialState& s, int l) {
        return full_polarization(m, s)[l];
    };
    for (int l = 0; l < 3; ++l) {
        const ScalarStateFn f = [&, l](const ReferentialState& s) {
            return pi_component(s, l);
        };
        e.dPi_dtheta[l] = fd_gradient_theta(f, at, sc);
        const Vec3 dW = fd_gradient_vec(f, at, VecSlot::W, sc);
        const Vec3 dQ = fd_gradient_vec(f, at, VecSlot::Q, sc);
        for (int c = 0; c < 3; ++c) {
            e.dPi_dW(l, c) = dW[c];
            e.dPi_dQ(l, c) = dQ[c];
        }
        e.dPi_dF[l] = fd_gradient_F(f, at, sc);
    }
    return e;
}

}  // namespace secondsound
