#pragma once

#include <functional>

#include "secondsound/audit.hpp"
#include "secondsound/material.hpp"

// The usual ("Fourier") theory: no evolution equation for the heat
// flux, Q itself is a response function of (F, theta, W, G). It is the
// second-sound theory with the d(psi)/dQ channels collapsed to zero, so
// the audit machinery is shared with the Cattaneo side.

namespace secondsound {

struct FourierModel {
    MaterialModel base;  // psi0, gradients, rho_R carried over; Q-channels unused
    std::function<Vec3(const Mat3&, double, const Vec3&, const Vec3&)> q_fn;

    const std::string& name() const { return base.name; }
};

// Steady-state limit of the linear Cattaneo law: Q = -K(F, theta, W) G.
FourierModel fourier_from_cattaneo(const MaterialModel& m);

double fourier_free_energy(const FourierModel& fm, const ReferentialState& at);
double fourier_entropy(const FourierModel& fm, const ReferentialState& at);
double fourier_internal_energy(const FourierModel& fm, const ReferentialState& at);
Mat3 fourier_stress(const FourierModel& fm, const ReferentialState& at);
Vec3 fourier_polarization(const FourierModel& fm, const ReferentialState& at);
Mat3 fourier_cauchy_stress(const FourierModel& fm, const ReferentialState& at);

// Identically zero in this theory; kept as a function so call sites
// mirror the second-sound path.
double fourier_internal_dissipation(const FourierModel& fm, const ReferentialState& at);

// | rho d(eta)/dt - rho r/theta + div q / theta | along a sample.
double fourier_entropy_balance_residual(const FourierModel& fm, const TrajectorySample& s);

AuditReport fourier_audit(const FourierModel& fm, int samples, std::uint64_t seed,
                          const FDScheme& scheme = {}, const AuditTolerances& tols = {});

}  // namespace secondsound
