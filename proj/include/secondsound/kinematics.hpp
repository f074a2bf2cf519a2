#pragma once

#include <random>

#include "secondsound/tensor.hpp"

// Kinematic conversions between the referential (material) and spatial
// frames of a finite deformation, plus the small matrix predicates the
// admissibility checks rely on.
//
// Unit convention is Gaussian: the electric displacement carries the
// explicit 4*pi polarization factor.

namespace secondsound {

// |det F| at or below this is treated as non-invertible.
inline constexpr double kDetFThreshold = 1e-12;

inline constexpr double kFourPi = 4.0 * 3.14159265358979323846;

struct KinematicState {
    Mat3 F;        // deformation gradient (dimensionless)
    double J = 1;  // det F
    Mat3 C;        // right Cauchy-Green tensor F^T F
    Mat3 E;        // Green strain (C - I)/2
};

// Inverts M, throwing NonInvertibleF when |det| <= kDetFThreshold.
Mat3 inverse(const Mat3& M);

KinematicState kinematics_from_F(const Mat3& F);

// Q = J F^{-1} q and its inverse q = (1/J) F Q. Used for the heat flux
// and polarization vectors alike.
Vec3 pull_heat_flux(const Mat3& F, const Vec3& q);
Vec3 push_heat_flux(const Mat3& F, const Vec3& Q);

// Covector pull-back a -> F^T a (electric field W = F^T E, temperature
// gradient G = F^T g).
Vec3 pull_covector(const Mat3& F, const Vec3& a);
Vec3 push_covector(const Mat3& F, const Vec3& A);

// D = E + 4 pi P (Gaussian units).
Vec3 electric_displacement(const Vec3& E_M, const Vec3& P);
// Referential displacement Delta = J F^{-1} D.
Vec3 referential_displacement(const Mat3& F, const Vec3& D);

// rho = rho_R / J; throws NonPositiveJ.
double spatial_density(double rho_R, double J);

// Symmetry to tol * max(1, |M|_inf); positive definiteness of the
// symmetric part, decided by a fixed probe set plus the leading
// principal minors.
bool check_symmetric(const Mat3& M, double tol = 1e-10);
bool check_positive_definite(const Mat3& M, double tol = 1e-10);

// Uniform-ish random rotation (axis from normalized Gaussian triple,
// angle uniform in [0, pi)).
Mat3 random_rotation(std::mt19937_64& rng);
bool is_rotation(const Mat3& R, double tol = 1e-10);

}  // namespace secondsound
