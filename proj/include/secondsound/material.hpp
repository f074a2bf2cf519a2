#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "secondsound/fd.hpp"
#include "secondsound/state.hpp"
#include "secondsound/tensor.hpp"

namespace secondsound {

// A material is the triple (psi0, K, T) of equilibrium free energy,
// steady-state conductivity and relaxation-time tensor, plus the
// referential density. Everything else (entropy, stress, internal
// energy, polarization, the heat-flux evolution law) is derived.
//
// Analytic derivative callbacks are optional: the engine falls back to
// finite differences when they are absent. Presets fill them in so the
// 1-D simulator runs in closed form.
struct MaterialModel {
    std::string name;
    double rho_R = 1.0;
    double theta_ref = 1.0;  // reference temperature for sampling/scenarios

    using FieldFn3 = std::function<double(const Mat3&, double, const Vec3&)>;
    using MatFn3 = std::function<Mat3(const Mat3&, double, const Vec3&)>;
    using VecFn3 = std::function<Vec3(const Mat3&, double, const Vec3&)>;

    FieldFn3 psi0;        // specific equilibrium free energy (J/kg)
    MatFn3 conductivity;  // K(F, theta, W), positive-definite
    MatFn3 relaxation;    // T(F, theta, W), invertible

    // Optional analytic first derivatives of psi0.
    MatFn3 dpsi0_dF;
    FieldFn3 dpsi0_dtheta;
    VecFn3 dpsi0_dW;

    // Optional analytic second derivatives of psi0 (used by the
    // simulator's energy chain rule).
    FieldFn3 d2psi0_dtheta2;
    MatFn3 d2psi0_dF_dtheta;
    VecFn3 d2psi0_dW_dtheta;
    MatFn3 d2psi0_dW_dW;

    // Optional analytic theta-derivatives of Z = K^{-1} T.
    MatFn3 dZ_dtheta;
    MatFn3 d2Z_dtheta2;

    // Structural knowledge about Z; lets the engine skip rank-4 / rank-3
    // finite differencing when the couplings vanish identically.
    bool z_constant_in_F = false;
    bool z_constant_in_W = false;

    // Extra additive free-energy term on the full state. Admissible
    // materials leave it empty; adversarial test models use it to break
    // the G-independence restriction on purpose.
    std::function<double(const ReferentialState&)> psi_extra;

    bool has_analytic_gradients() const {
        return dpsi0_dF && dpsi0_dtheta && dpsi0_dW;
    }
};

// Parameters of the Saint-Venant/Kirchhoff-style isotropic preset.
struct IsotropicParams {
    double lambda = 1.0;    // Lame lambda
    double mu = 1.0;        // shear modulus, > 0
    double c_v = 1.0;       // specific heat at theta_ref, > 0
    double theta_ref = 1.0; // > 0
    double chi = 0.1;       // electric susceptibility-like coefficient, >= 0
    double beta = 0.1;      // thermoelastic coupling
    double kappa = 1.0;     // conductivity, > 0
    double tau_rel = 0.05;  // relaxation time, > 0
    double rho_R = 1.0;     // > 0
};

// Constant K = kappa I, T = tau I.
MaterialModel make_isotropic_preset(const IsotropicParams& p);

// kappa(theta) = kappa0 * theta / theta_ref, so Z = K^{-1}T varies with
// temperature and the entropy/energy coupling tensors become nontrivial.
MaterialModel make_theta_kappa_preset(const IsotropicParams& p);

// Adversarial variants used to prove the audits can fail:
//  - indefinite K (K = kappa diag(1, 1, -1)),
//  - non-symmetric Z (T = tau (I + 1/2 e1 x e2)),
//  - free energy with an explicit G term.
MaterialModel make_indefinite_k_preset(const IsotropicParams& p);
MaterialModel make_nonsymmetric_z_preset(const IsotropicParams& p);
MaterialModel make_g_dependent_preset(const IsotropicParams& p);

// Name-keyed factory backing the CLI config. Unknown parameter keys are
// rejected. Throws InvalidParameter naming the violated bound.
MaterialModel make_preset(const std::string& name,
                          const std::map<std::string, double>& params);
std::vector<std::string> preset_names();

IsotropicParams isotropic_params_from_map(const std::map<std::string, double>& params);

}  // namespace secondsound
