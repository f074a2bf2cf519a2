#include "secondsound/kinematics.hpp"

#include <cmath>
#include <string>

#include "secondsound/errors.hpp"

namespace secondsound {

Mat3 inverse(const Mat3& M) {
    const double d = M.det();
    if (!(std::fabs(d) > kDetFThreshold))
        throw NonInvertibleF("matrix inversion: |det| = " + std::to_string(std::fabs(d)) +
                             " <= 1e-12");
    const double inv = 1.0 / d;
    Mat3 r;
    r(0, 0) = (M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1)) * inv;
    r(0, 1) = (M(0, 2) * M(2, 1) - M(0, 1) * M(2, 2)) * inv;
    r(0, 2) = (M(0, 1) * M(1, 2) - M(0, 2) * M(1, 1)) * inv;
    r(1, 0) = (M(1, 2) * M(2, 0) - M(1, 0) * M(2, 2)) * inv;
    r(1, 1) = (M(0, 0) * M(2, 2) - M(0, 2) * M(2, 0)) * inv;
    r(1, 2) = (M(0, 2) * M(1, 0) - M(0, 0) * M(1, 2)) * inv;
    r(2, 0) = (M(1, 0) * M(2, 1) - M(1, 1) * M(2, 0)) * inv;
    r(2, 1) = (M(0, 1) * M(2, 0) - M(0, 0) * M(2, 1)) * inv;
    r(2, 2) = (M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0)) * inv;
    return r;
}

KinematicState kinematics_from_F(const Mat3& F) {
    const double J = F.det();
    if (!(J > kDetFThreshold))
        throw NonInvertibleF("deformation gradient: det F = " + std::to_string(J) +
                             " <= 1e-12");
    KinematicState ks;
    ks.F = F;
    ks.J = J;
    ks.C = F.transpose() * F;
    ks.E = (ks.C - Mat3::identity()) * 0.5;
    return ks;
}

Vec3 pull_heat_flux(const Mat3& F, const Vec3& q) {
    const double J = F.det();
    if (!(J > kDetFThreshold))
        throw NonInvertibleF("pull-back: det F = " + std::to_string(J) + " <= 1e-12");
    return (inverse(F) * q) * J;
}

Vec3 push_heat_flux(const Mat3& F, const Vec3& Q) {
    const double J = F.det();
    if (!(J > kDetFThreshold))
        throw NonInvertibleF("push-forward: det F = " + std::to_string(J) + " <= 1e-12");
    return (F * Q) / J;
}

Vec3 pull_covector(const Mat3& F, const Vec3& a) { return F.transpose() * a; }

Vec3 push_covector(const Mat3& F, const Vec3& A) {
    return inverse(F).transpose() * A;
}

Vec3 electric_displacement(const Vec3& E_M, const Vec3& P) { return E_M + P * kFourPi; }

Vec3 referential_displacement(const Mat3& F, const Vec3& D) {
    return pull_heat_flux(F, D);
}

double spatial_density(double rho_R, double J) {
    if (!(J > 0.0)) throw NonPositiveJ("spatial density: J = " + std::to_string(J));
    return rho_R / J;
}

bool check_symmetric(const Mat3& M, double tol) {
    const double scale = std::fmax(1.0, M.norm_inf());
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            worst = std::fmax(worst, std::fabs(M(i, j) - M(j, i)));
    return worst <= tol * scale;
}

bool check_positive_definite(const Mat3& M, double tol) {
    if (!M.finite()) return false;
    const Mat3 S = M.sym();

    static const Vec3 probes[] = {
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
        {1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1},
        {1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {1, 1, -1},
    };
    for (const Vec3& x : probes) {
        const double q = x.dot(S * x) / x.dot(x);
        if (!(q > tol)) return false;
    }

    const double m1 = S(0, 0);
    const double m2 = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
    const double m3 = S.det();
    return m1 > tol && m2 > tol && m3 > tol;
}

Mat3 random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec3 axis{gauss(rng), gauss(rng), gauss(rng)};
    double n = axis.norm();
    while (n < 1e-8) {
        axis = Vec3{gauss(rng), gauss(rng), gauss(rng)};
        n = axis.norm();
    }
    axis = axis / n;
    std::uniform_real_distribution<double> uang(0.0, 3.14159265358979323846);
    const double ang = uang(rng);

    // Rodrigues formula
    const double c = std::cos(ang), s = std::sin(ang);
    Mat3 K{0, -axis[2], axis[1], axis[2], 0, -axis[0], -axis[1], axis[0], 0};
    return Mat3::identity() + K * s + (K * K) * (1.0 - c);
}

bool is_rotation(const Mat3& R, double tol) {
    const Mat3 err = R.transpose() * R - Mat3::identity();
    return err.norm_inf() <= tol && std::fabs(R.det() - 1.0) <= tol;
}

}  // namespace secondsound
