#include "secondsound/material.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "secondsound/errors.hpp"
#include "secondsound/kinematics.hpp"

namespace secondsound {
namespace {

void validate(const IsotropicParams& p) {
    const auto fail = [](const std::string& msg) { throw InvalidParameter(msg); };
    if (!(p.mu > 0)) fail("preset requires mu > 0");
    if (!(3 * p.lambda + 2 * p.mu > 0)) fail("preset requires 3*lambda + 2*mu > 0");
    if (!(p.c_v > 0)) fail("preset requires c_v > 0");
    if (!(p.theta_ref > 0)) fail("preset requires theta_ref > 0");
    if (!(p.chi >= 0)) fail("preset requires chi >= 0");
    if (!(p.kappa > 0)) fail("preset requires kappa > 0");
    if (!(p.tau_rel > 0)) fail("preset requires tau_rel > 0");
    if (!(p.rho_R > 0)) fail("preset requires rho_R > 0");
}

// psi0(F, theta, W) =
//   [ lambda/2 (tr E)^2 + mu E:E ] / rho_R
//   - c_v (theta - theta_ref)^2 / (2 theta_ref)
//   - beta (theta - theta_ref) tr E / rho_R
//   - chi W.W / (2 rho_R),
// with E the Green strain of F.
void install_psi0(MaterialModel& m, const IsotropicParams& p) {
    const double lambda = p.lambda, mu = p.mu, c_v = p.c_v, th0 = p.theta_ref;
    const double chi = p.chi, beta = p.beta, rho = p.rho_R;

    m.psi0 = [=](const Mat3& F, double theta, const Vec3& W) {
        const Mat3 E = kinematics_from_F(F).E;
        const double trE = E.trace();
        const double dth = theta - th0;
        return (0.5 * lambda * trE * trE + mu * E.ddot(E)) / rho
             - 0.5 * c_v * dth * dth / th0
             - beta * dth * trE / rho
             - 0.5 * chi * W.dot(W) / rho;
    };
    m.dpsi0_dF = [=](const Mat3& F, double theta, const Vec3&) {
        const Mat3 E = kinematics_from_F(F).E;
        const double coef = lambda * E.trace() - beta * (theta - th0);
        return F * (Mat3::scaled_identity(coef) + E * (2.0 * mu)) / rho;
    };
    m.dpsi0_dtheta = [=](const Mat3& F, double theta, const Vec3&) {
        const double trE = kinematics_from_F(F).E.trace();
        return -c_v * (theta - th0) / th0 - beta * trE / rho;
    };
    m.dpsi0_dW = [=](const Mat3&, double, const Vec3& W) { return W * (-chi / rho); };

    m.d2psi0_dtheta2 = [=](const Mat3&, double, const Vec3&) { return -c_v / th0; };
    m.d2psi0_dF_dtheta = [=](const Mat3& F, double, const Vec3&) {
        return F * (-beta / rho);
    };
    m.d2psi0_dW_dtheta = [](const Mat3&, double, const Vec3&) { return Vec3::zero(); };
    m.d2psi0_dW_dW = [=](const Mat3&, double, const Vec3&) {
        return Mat3::scaled_identity(-chi / rho);
    };
}

}  // namespace

MaterialModel make_isotropic_preset(const IsotropicParams& p) {
    validate(p);
    MaterialModel m;
    m.name = "isotropic";
    m.rho_R = p.rho_R;
    m.theta_ref = p.theta_ref;
    install_psi0(m, p);

    const double kappa = p.kappa, tau = p.tau_rel;
    m.conductivity = [=](const Mat3&, double, const Vec3&) {
        return Mat3::scaled_identity(kappa);
    };
    m.relaxation = [=](const Mat3&, double, const Vec3&) {
        return Mat3::scaled_identity(tau);
    };
    m.dZ_dtheta = [](const Mat3&, double, const Vec3&) { return Mat3::zero(); };
    m.d2Z_dtheta2 = [](const Mat3&, double, const Vec3&) { return Mat3::zero(); };
    m.z_constant_in_F = true;
    m.z_constant_in_W = true;
    return m;
}

MaterialModel make_theta_kappa_preset(const IsotropicParams& p) {
    validate(p);
    MaterialModel m;
    m.name = "theta_kappa";
    m.rho_R = p.rho_R;
    m.theta_ref = p.theta_ref;
    install_psi0(m, p);

    const double kappa0 = p.kappa, tau = p.tau_rel, th0 = p.theta_ref;
    m.conductivity = [=](const Mat3&, double theta, const Vec3&) {
        return Mat3::scaled_identity(kappa0 * theta / th0);
    };
    m.relaxation = [=](const Mat3&, double, const Vec3&) {
        return Mat3::scaled_identity(tau);
    };
    // Z = (tau theta_ref / kappa0) / theta * I
    const double z1 = tau * th0 / kappa0;
    m.dZ_dtheta = [=](const Mat3&, double theta, const Vec3&) {
        return Mat3::scaled_identity(-z1 / (theta * theta));
    };
    m.d2Z_dtheta2 = [=](const Mat3&, double theta, const Vec3&) {
        return Mat3::scaled_identity(2.0 * z1 / (theta * theta * theta));
    };
    m.z_constant_in_F = true;
    m.z_constant_in_W = true;
    return m;
}

MaterialModel make_indefinite_k_preset(const IsotropicParams& p) {
    MaterialModel m = make_isotropic_preset(p);
    m.name = "isotropic_indefinite_k";
    const double kappa = p.kappa;
    m.conductivity = [=](const Mat3&, double, const Vec3&) {
        return Mat3::diag(kappa, kappa, -kappa);
    };
    m.dZ_dtheta = [](const Mat3&, double, const Vec3&) { return Mat3::zero(); };
    m.d2Z_dtheta2 = [](const Mat3&, double, const Vec3&) { return Mat3::zero(); };
    return m;
}

MaterialModel make_nonsymmetric_z_preset(const IsotropicParams& p) {
    MaterialModel m = make_isotropic_preset(p);
    m.name = "isotropic_nonsymmetric_z";
    const double tau = p.tau_rel;
    m.relaxation = [=](const Mat3&, double, const Vec3&) {
        Mat3 T = Mat3::scaled_identity(tau);
        T(0, 1) = 0.5 * tau;
        return T;
    };
    return m;
}

MaterialModel make_g_dependent_preset(const IsotropicParams& p) {
    MaterialModel m = make_isotropic_preset(p);
    m.name = "isotropic_g_dependent";
    const double rho = p.rho_R;
    m.psi_extra = [=](const ReferentialState& s) { return 0.01 * s.G.dot(s.G) / rho; };
    return m;
}

IsotropicParams isotropic_params_from_map(const std::map<std::string, double>& params) {
    IsotropicParams p;
    static const std::set<std::string> known = {
        "lambda", "mu", "c_v", "theta_ref", "chi", "beta", "kappa", "tau_rel", "rho_R"};
    for (const auto& [k, v] : params) {
        if (!known.count(k)) throw InvalidParameter("unknown material parameter '" + k + "'");
        if (k == "lambda") p.lambda = v;
        else if (k == "mu") p.mu = v;
        else if (k == "c_v") p.c_v = v;
        else if (k == "theta_ref") p.theta_ref = v;
        else if (k == "chi") p.chi = v;
        else if (k == "beta") p.beta = v;
        else if (k == "kappa") p.kappa = v;
        else if (k == "tau_rel") p.tau_rel = v;
        else if (k == "rho_R") p.rho_R = v;
    }
    return p;
}

MaterialModel make_preset(const std::string& name,
                          const std::map<std::string, double>& params) {
    const IsotropicParams p = isotropic_params_from_map(params);
    if (name == "isotropic") return make_isotropic_preset(p);
    if (name == "theta_kappa") return make_theta_kappa_preset(p);
    if (name == "isotropic_indefinite_k") return make_indefinite_k_preset(p);
    if (name == "isotropic_nonsymmetric_z") return make_nonsymmetric_z_preset(p);
    if (name == "isotropic_g_dependent") return make_g_dependent_preset(p);
    std::ostringstream os;
    os << "unknown material preset '" << name << "'; available:";
    for (const auto& n : preset_names()) os << ' ' << n;
    throw InvalidParameter(os.str());
}

std::vector<std::string> preset_names() {
    return {"isotropic", "theta_kappa", "isotropic_indefinite_k",
            "isotropic_nonsymmetric_z", "isotropic_g_dependent"};
}

}  // namespace secondsound
