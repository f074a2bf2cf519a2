#pragma once

#include <array>
#include <vector>

#include "secondsound/fd.hpp"
#include "secondsound/material.hpp"
#include "secondsound/state.hpp"
#include "secondsound/tensor.hpp"

// Second-sound constitutive engine. Builds the full response functions
// from a material's (psi0, K, T):
//
//   Z = K^{-1} T,
//   rho_R psi = rho_R psi0 + (1/2theta) Q.ZQ,
//   rho_R eta = rho_R eta0 + Q.BQ,        B = -1/2 d/dtheta (Z/theta),
//   rho_R eps = rho_R eps0 + Q.AQ,        A = -(theta^2/2) d/dtheta (Z/theta^2),
//   S         = S0 + Q.P_F Q,             P_F = (1/2theta) dZ/dF,
//   dQ/dt     = -T^{-1} (Q + K G),
//
// with eta0 = -d(psi0)/dtheta, S0 = rho_R d(psi0)/dF, Pi0 = -d(psi0)/dW and
// eps0 = psi0 + theta eta0 + W.Pi0 (the Gibbs relation at Q = 0).
//
// A satisfies the algebraic identity A = Z/theta - 1/2 dZ/dtheta, which is
// what the closed-form evaluation path uses.

namespace secondsound {

struct DerivedTensors {
    Mat3 Z;     // relaxation over conductivity, K^{-1} T
    Mat3 A;     // internal-energy coupling
    Mat3 B;     // entropy coupling
    Rank4 P_F;  // stress coupling, dZ_LM/dF_iK scaled by 1/(2 theta)
};

struct ConstitutiveOutput {
    double psi = 0;      // specific free energy
    double eta = 0;      // specific entropy
    double eps = 0;      // specific internal energy
    Mat3 S;              // first Piola-Kirchhoff stress, S(i,K)
    Vec3 Pi;             // referential polarization per unit mass
    Vec3 Q_dot;          // Cattaneo heat-flux rate
    double delta0 = 0;   // internal dissipation (spatial units)
    Mat3 tau_cauchy;     // Cauchy stress including the electric dyad
};

// One increment of a discrete trajectory, for the entropy-equality
// residual. div_Q is the referential divergence of Q at `at`.
struct TrajectorySample {
    ReferentialState at;
    ReferentialState at_next;
    double dt = 0;
    double r = 0;      // radiating heating per unit mass
    double div_Q = 0;
};

struct ObjectivityResiduals {
    double psi_max = 0;
    double tau_max = 0;
};

Mat3 z_tensor(const MaterialModel& m, const Mat3& F, double theta, const Vec3& W);

// All derivatives of Z here are finite differences of the material's K/T
// response, regardless of analytic overrides; this is the audit-side view.
DerivedTensors derived_tensors(const MaterialModel& m, const ReferentialState& at,
                               const FDScheme& scheme = {});

// Entropy/energy coupling tensors on the evaluation path: analytic when
// the model carries dZ_dtheta, finite differences otherwise.
Mat3 coupling_B(const MaterialModel& m, const ReferentialState& at);
Mat3 coupling_A(const MaterialModel& m, const ReferentialState& at);

double full_free_energy(const MaterialModel& m, const ReferentialState& at);
double full_entropy(const MaterialModel& m, const ReferentialState& at);
double full_internal_energy(const MaterialModel& m, const ReferentialState& at);
Mat3 full_stress(const MaterialModel& m, const ReferentialState& at);
Vec3 full_polarization(const MaterialModel& m, const ReferentialState& at);

// d(psi-hat)/dQ = sym(Z) Q / (theta rho_R).
Vec3 dpsi_dQ(const MaterialModel& m, const ReferentialState& at);

// Cattaneo evolution dQ/dt = -T^{-1}(Q + K G) and its inverse
// Q = -K G - T dQ/dt.
Vec3 heat_flux_rate(const MaterialModel& m, const ReferentialState& at);
Vec3 invert_evolution(const MaterialModel& m, const Mat3& F, double theta, const Vec3& W,
                      const Vec3& G, const Vec3& Q_dot);

// rho_R theta d(psi)/dQ . H + Q.G, nonpositive for admissible materials.
double reduced_dissipation_lhs(const MaterialModel& m, const ReferentialState& at);

// delta0 = -rho d(psi)/dq . dq/dt, reported in spatial units (rho = rho_R/J).
double internal_dissipation(const MaterialModel& m, const ReferentialState& at);

// | rho d(eta)/dt - rho r/theta + div q / theta + rho d(psi)/dq . dq/dt |
// with the rates taken as forward differences along the sample.
double entropy_balance_residual(const MaterialModel& m, const TrajectorySample& s);

// tau = (1/J) S F^T - P x E_M. The overload derives E_M = F^{-T} W.
Mat3 cauchy_stress(const MaterialModel& m, const ReferentialState& at, const Vec3& E_M);
Mat3 cauchy_stress(const MaterialModel& m, const ReferentialState& at);

Mat3 cauchy_from_piola(const Mat3& F, const Mat3& S, const Vec3& P_spatial,
                       const Vec3& E_M);
Mat3 piola_from_cauchy(const Mat3& F, const Mat3& tau, const Vec3& P_spatial,
                       const Vec3& E_M);

// Spatial polarization P = (1/J) F (rho_R Pi).
Vec3 spatial_polarization(const MaterialModel& m, const ReferentialState& at);

ConstitutiveOutput evaluate(const MaterialModel& m, const ReferentialState& at);

// psi invariance and tau equivariance under F -> R F.
ObjectivityResiduals objectivity_check(const MaterialModel& m, const ReferentialState& at,
                                       const std::vector<Mat3>& rotations);

// Everything the simulator's energy chain rule needs at one state. The
// analytic path requires the preset-style callbacks plus Z constant in
// F and W; otherwise all slots fall back to finite differences.
struct EnergyChainEval {
    double eps = 0;
    double eta = 0;
    double deps_dtheta = 0;
    Mat3 deps_dF;
    Vec3 deps_dW;
    Vec3 deps_dQ;
    Vec3 Pi;
    Vec3 dPi_dtheta;
    Mat3 dPi_dW;
    std::array<Mat3, 3> dPi_dF{};  // dPi_l/dF
    Mat3 dPi_dQ;
};

EnergyChainEval energy_chain(const MaterialModel& m, const ReferentialState& at);
bool has_closed_form_chain(const MaterialModel& m);

}  // namespace secondsound
