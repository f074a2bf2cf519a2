#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "secondsound/errors.hpp"
#include "secondsound/kinematics.hpp"

using namespace secondsound;

namespace {

Mat3 random_F(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat3 F;
    do {
        Mat3 U;
        for (double& x : U.m) x = u(rng);
        F = Mat3::identity() + U * 0.3;
    } while (!(F.det() > 0.2));
    return F;
}

Vec3 random_vec(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return Vec3{u(rng), u(rng), u(rng)} * scale;
}

}  // namespace

TEST_CASE("kinematics of the undeformed state") {
    const KinematicState ks = kinematics_from_F(Mat3::identity());
    CHECK(ks.J == doctest::Approx(1.0));
    CHECK(ks.E.norm_inf() == doctest::Approx(0.0));
    CHECK(ks.C.norm_inf() == doctest::Approx(1.0));
}

TEST_CASE("kinematics of a uniaxial stretch") {
    const KinematicState ks = kinematics_from_F(Mat3::diag(2, 1, 1));
    CHECK(ks.J == doctest::Approx(2.0));
    CHECK(ks.E(0, 0) == doctest::Approx(1.5));
    CHECK(ks.E(1, 1) == doctest::Approx(0.0));
    CHECK(ks.E(2, 2) == doctest::Approx(0.0));
    CHECK(ks.E(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("singular F is rejected") {
    CHECK_THROWS_AS(kinematics_from_F(Mat3::diag(0, 1, 1)), NonInvertibleF);
    CHECK_THROWS_AS(kinematics_from_F(Mat3::diag(-1, 1, 1)), NonInvertibleF);
    CHECK_THROWS_AS(inverse(Mat3::diag(1e-13, 1, 1)), NonInvertibleF);
}

TEST_CASE("green strain is invariant under rotations of F") {
    std::mt19937_64 rng(101);
    const Mat3 F = random_F(rng);
    const Mat3 E_ref = kinematics_from_F(F).E;
    for (int k = 0; k < 100; ++k) {
        const Mat3 R = random_rotation(rng);
        REQUIRE(is_rotation(R));
        const Mat3 E_rot = kinematics_from_F(R * F).E;
        CHECK((E_rot - E_ref).norm_inf() <= 1e-12);
    }
}

TEST_CASE("heat flux pull-back") {
    const Vec3 q{3, -1, 2};
    const Vec3 Q = pull_heat_flux(Mat3::identity(), q);
    CHECK(Q[0] == doctest::Approx(3.0));
    CHECK(Q[1] == doctest::Approx(-1.0));
    CHECK(Q[2] == doctest::Approx(2.0));

    // J = 2, F^{-1} q = (1/2, 0, 0), the J factor restores (1, 0, 0)
    const Vec3 Q2 = pull_heat_flux(Mat3::diag(2, 1, 1), Vec3{1, 0, 0});
    CHECK(Q2[0] == doctest::Approx(1.0));
    CHECK(Q2[1] == doctest::Approx(0.0));
}

TEST_CASE("pull/push round trip on random states") {
    std::mt19937_64 rng(202);
    for (int k = 0; k < 100; ++k) {
        const Mat3 F = random_F(rng);
        const Vec3 q = random_vec(rng, 2.0);
        const Vec3 back = push_heat_flux(F, pull_heat_flux(F, q));
        CHECK((back - q).norm_inf() <= 1e-12);
    }
}

TEST_CASE("covector pull-back") {
    const Vec3 a{0, 0, 5};
    CHECK((pull_covector(Mat3::identity(), a) - a).norm_inf() == doctest::Approx(0.0));

    const Vec3 b = pull_covector(Mat3::diag(2, 1, 1), Vec3{1, 1, 0});
    CHECK(b[0] == doctest::Approx(2.0));
    CHECK(b[1] == doctest::Approx(1.0));
    CHECK(b[2] == doctest::Approx(0.0));

    CHECK(pull_covector(Mat3::diag(2, 1, 1), Vec3::zero()).norm_inf() == 0.0);
}

TEST_CASE("pull operations are linear in the vector argument") {
    std::mt19937_64 rng(303);
    for (int k = 0; k < 50; ++k) {
        const Mat3 F = random_F(rng);
        const Vec3 a = random_vec(rng), b = random_vec(rng);
        const double alpha = 0.37, beta = -1.25;

        const Vec3 lhs = pull_covector(F, a * alpha + b * beta);
        const Vec3 rhs = pull_covector(F, a) * alpha + pull_covector(F, b) * beta;
        CHECK((lhs - rhs).norm_inf() <= 1e-14);

        const Vec3 lhs2 = pull_heat_flux(F, a * alpha + b * beta);
        const Vec3 rhs2 = pull_heat_flux(F, a) * alpha + pull_heat_flux(F, b) * beta;
        CHECK((lhs2 - rhs2).norm_inf() <= 1e-14);
    }
}

TEST_CASE("electric displacement carries the Gaussian 4 pi factor") {
    const Vec3 E{0.3, -0.7, 1.1};
    CHECK((electric_displacement(E, Vec3::zero()) - E).norm_inf() == 0.0);

    const Vec3 D = electric_displacement(Vec3::zero(), Vec3{1, 0, 0});
    CHECK(D[0] == doctest::Approx(4 * 3.14159265358979323846));
    CHECK(D[1] == 0.0);
}

TEST_CASE("referential displacement agrees when computed both ways") {
    std::mt19937_64 rng(404);
    for (int k = 0; k < 50; ++k) {
        const Mat3 F = random_F(rng);
        const Vec3 E = random_vec(rng), P = random_vec(rng);
        const Vec3 delta1 = referential_displacement(F, electric_displacement(E, P));
        const Vec3 delta2 = pull_heat_flux(F, E) + pull_heat_flux(F, P) * kFourPi;
        CHECK((delta1 - delta2).norm_inf() <= 1e-12);
    }
}

TEST_CASE("spatial density") {
    CHECK(spatial_density(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(spatial_density(2.0, 4.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(spatial_density(1.0, 0.0), NonPositiveJ);
    CHECK_THROWS_AS(spatial_density(1.0, -2.0), NonPositiveJ);
}

TEST_CASE("matrix predicates") {
    CHECK(check_symmetric(Mat3::identity()));
    CHECK(check_positive_definite(Mat3::identity()));

    CHECK(!check_positive_definite(Mat3::diag(1, -1, 1)));

    const Mat3 M{2, 1, 0, 0, 2, 0, 0, 0, 2};
    CHECK(!check_symmetric(M));
    CHECK(check_positive_definite(M));  // symmetric part has minors 2, 3.75, 7.5
}

TEST_CASE("referential and spatial divergences of a pulled-back field") {
    // h(x) = A x + c is linear, so central differences evaluate both
    // divergences exactly: DIV(J F^{-1} h(F X)) = J div h = J tr A.
    std::mt19937_64 rng(505);
    for (int k = 0; k < 20; ++k) {
        const Mat3 F = random_F(rng);
        Mat3 A;
        {
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (double& x : A.m) x = u(rng);
        }
        const Vec3 c = random_vec(rng);
        const double J = F.det();

        const auto pulled = [&](const Vec3& X) {
            const Vec3 x = F * X;
            return pull_heat_flux(F, A * x + c);
        };

        const double h = 1e-3;
        double div_ref = 0;
        const Vec3 X0{0.2, -0.1, 0.4};
        for (int K = 0; K < 3; ++K) {
            Vec3 Xp = X0, Xm = X0;
            Xp[K] += h;
            Xm[K] -= h;
            div_ref += (pulled(Xp)[K] - pulled(Xm)[K]) / (2 * h);
        }
        CHECK(div_ref == doctest::Approx(J * A.trace()).epsilon(1e-10));
    }
}
