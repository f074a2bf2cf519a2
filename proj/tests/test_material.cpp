#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "secondsound/errors.hpp"
#include "secondsound/fd.hpp"
#include "secondsound/kinematics.hpp"
#include "secondsound/material.hpp"

using namespace secondsound;

TEST_CASE("reference state is a stationary point of the preset energy") {
    const MaterialModel m = make_isotropic_preset({});
    const Mat3 I = Mat3::identity();
    CHECK(m.psi0(I, m.theta_ref, Vec3::zero()) == doctest::Approx(0.0));
    CHECK(m.dpsi0_dtheta(I, m.theta_ref, Vec3::zero()) == doctest::Approx(0.0));
    CHECK(m.dpsi0_dF(I, m.theta_ref, Vec3::zero()).norm_inf() == doctest::Approx(0.0));
}

TEST_CASE("preset elastic energy for a uniaxial stretch") {
    IsotropicParams p;
    p.lambda = 0;
    p.mu = 1;
    p.rho_R = 1;
    p.beta = 0;
    p.chi = 0;
    const MaterialModel m = make_isotropic_preset(p);
    // E = diag(1.5, 0, 0), so mu E:E = 2.25
    CHECK(m.psi0(Mat3::diag(2, 1, 1), p.theta_ref, Vec3::zero()) == doctest::Approx(2.25));
}

TEST_CASE("preset electric energy term") {
    IsotropicParams p;
    p.lambda = 0;
    p.mu = 1;
    p.beta = 0;
    p.chi = 1;
    p.rho_R = 1;
    const MaterialModel m = make_isotropic_preset(p);
    // -1/2 chi |W|^2 = -2 at W = (2, 0, 0)
    CHECK(m.psi0(Mat3::identity(), p.theta_ref, Vec3{2, 0, 0}) == doctest::Approx(-2.0));
}

TEST_CASE("invalid preset parameters are named") {
    IsotropicParams p;
    p.mu = -1;
    CHECK_THROWS_WITH_AS(make_isotropic_preset(p), "preset requires mu > 0",
                         InvalidParameter);
    p = {};
    p.tau_rel = 0;
    CHECK_THROWS_AS(make_isotropic_preset(p), InvalidParameter);
    p = {};
    p.lambda = -10;
    CHECK_THROWS_AS(make_isotropic_preset(p), InvalidParameter);
    CHECK_THROWS_AS(make_preset("isotropic", {{"nope", 1.0}}), InvalidParameter);
    CHECK_THROWS_AS(make_preset("bogus", {}), InvalidParameter);
}

TEST_CASE("finite differences reproduce analytic derivatives") {
    const FDScheme sc{};
    ReferentialState at;
    at.theta = 3.0;
    at.Q = Vec3{1, 2, 3};

    const ScalarStateFn f_theta = [](const ReferentialState& s) {
        return s.theta * s.theta;
    };
    CHECK(fd_gradient_theta(f_theta, at, sc) == doctest::Approx(6.0).epsilon(1e-8));

    const ScalarStateFn f_const = [](const ReferentialState&) { return 2.5; };
    CHECK(std::fabs(fd_gradient_theta(f_const, at, sc)) <= 1e-12);
    CHECK(fd_gradient_F(f_const, at, sc).norm_inf() <= 1e-12);

    const ScalarStateFn f_q = [](const ReferentialState& s) { return s.Q.dot(s.Q); };
    const Vec3 g = fd_gradient_vec(f_q, at, VecSlot::Q, sc);
    CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(g[1] == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(g[2] == doctest::Approx(6.0).epsilon(1e-8));
}

TEST_CASE("tensor-valued theta derivatives") {
    const FDScheme sc{};
    ReferentialState at;
    at.theta = 2.0;

    const MatStateFn z_const = [](const ReferentialState&) { return Mat3::diag(1, 2, 3); };
    CHECK(fd_derivative_theta(z_const, at, sc).norm_inf() <= 1e-12);

    const MatStateFn z_lin = [](const ReferentialState& s) {
        return Mat3::scaled_identity(s.theta);
    };
    const Mat3 d = fd_derivative_theta(z_lin, at, sc);
    CHECK((d - Mat3::identity()).norm_inf() <= 1e-9);

    // Z = (tau/kappa0) / theta * I with tau = 0.4, kappa0 = 2
    const MatStateFn z_inv = [](const ReferentialState& s) {
        return Mat3::scaled_identity(0.4 / (2.0 * s.theta));
    };
    const Mat3 dz = fd_derivative_theta(z_inv, at, sc);
    CHECK((dz - Mat3::scaled_identity(-0.4 / (2.0 * at.theta * at.theta))).norm_inf() <=
          1e-8);
}

TEST_CASE("halving the step shows at least the expected order") {
    ReferentialState at;
    at.theta = 1.3;
    const ScalarStateFn f = [](const ReferentialState& s) {
        return std::sin(2.0 * s.theta) + std::exp(0.5 * s.theta);
    };
    const double exact = 2.0 * std::cos(2.0 * at.theta) + 0.5 * std::exp(0.5 * at.theta);

    FDScheme coarse{};
    coarse.relative_step = 1e-3;
    coarse.absolute_floor = 1e-3;
    FDScheme fine = coarse;
    fine.relative_step = 5e-4;
    fine.absolute_floor = 5e-4;

    const double e_coarse = std::fabs(fd_gradient_theta(f, at, coarse) - exact);
    const double e_fine = std::fabs(fd_gradient_theta(f, at, fine) - exact);
    const double order = std::log2(e_coarse / e_fine);
    CHECK(order >= 1.8);
}

TEST_CASE("fourth-order scheme is markedly more accurate") {
    ReferentialState at;
    at.theta = 1.3;
    const ScalarStateFn f = [](const ReferentialState& s) { return std::sin(2.0 * s.theta); };
    const double exact = 2.0 * std::cos(2.0 * at.theta);

    FDScheme o2{};
    o2.relative_step = 1e-4;
    o2.absolute_floor = 1e-4;
    FDScheme o4 = o2;
    o4.order = 4;

    const double e2 = std::fabs(fd_gradient_theta(f, at, o2) - exact);
    const double e4 = std::fabs(fd_gradient_theta(f, at, o4) - exact);
    CHECK(e4 < e2 * 1e-2);
}

TEST_CASE("preset objectivity under random rotations") {
    std::mt19937_64 rng(4242);
    for (const char* name : {"isotropic", "theta_kappa"}) {
        const MaterialModel m = make_preset(name, {});
        const Mat3 F{1.1, 0.2, 0.0, -0.1, 0.95, 0.05, 0.0, 0.1, 1.2};
        const Vec3 W{0.3, -0.2, 0.5};
        const double psi_ref = m.psi0(F, 1.4, W);
        for (int k = 0; k < 100; ++k) {
            const Mat3 R = random_rotation(rng);
            CHECK(std::fabs(m.psi0(R * F, 1.4, W) - psi_ref) <= 1e-12);
        }
    }
}

TEST_CASE("preset conductivity and relaxation tensors are well-posed") {
    for (const char* name : {"isotropic", "theta_kappa"}) {
        const MaterialModel m = make_preset(name, {});
        const Mat3 F{1.1, 0.2, 0.0, -0.1, 0.95, 0.05, 0.0, 0.1, 1.2};
        for (double theta : {0.5, 1.0, 1.9}) {
            const Mat3 K = m.conductivity(F, theta, Vec3{0.1, 0, 0});
            const Mat3 T = m.relaxation(F, theta, Vec3{0.1, 0, 0});
            CHECK(check_positive_definite(K));
            CHECK(std::fabs(T.det()) > 1e-12);
        }
    }
}

TEST_CASE("analytic preset gradients match finite differences") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    const FDScheme sc{};
    for (const char* name : {"isotropic", "theta_kappa"}) {
        const MaterialModel m = make_preset(name, {});
        for (int k = 0; k < 10; ++k) {
            ReferentialState s;
            Mat3 U;
            for (double& x : U.m) x = u(rng);
            s.F = Mat3::identity() + U;
            s.theta = 1.0 + u(rng);
            s.W = Vec3{u(rng), u(rng), u(rng)};

            const ScalarStateFn psi = [&m](const ReferentialState& st) {
                return m.psi0(st.F, st.theta, st.W);
            };
            CHECK(std::fabs(fd_gradient_theta(psi, s, sc) -
                            m.dpsi0_dtheta(s.F, s.theta, s.W)) <= 1e-7);
            CHECK((fd_gradient_F(psi, s, sc) - m.dpsi0_dF(s.F, s.theta, s.W)).norm_inf() <=
                  1e-7);
            const Vec3 dW = fd_gradient_vec(psi, s, VecSlot::W, sc);
            CHECK((dW - m.dpsi0_dW(s.F, s.theta, s.W)).norm_inf() <= 1e-7);
        }
    }
}
