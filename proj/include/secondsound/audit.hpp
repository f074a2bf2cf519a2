#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secondsound/constitutive.hpp"
#include "secondsound/material.hpp"

#include "json.hpp"

// Deterministic, seeded audit of the Coleman-Noll restrictions:
// gradient relations, G-independence of the free energy, the reduced
// dissipation inequality, positive-definiteness of K, symmetry of Z,
// and the vanishing of the heat-flux rate at thermal equilibrium.
// Failures are report entries, not exceptions.

namespace secondsound {

struct CheckResult {
    std::string name;
    double residual = 0;
    double tol = 0;
    bool pass = true;
    ReferentialState worst;  // state realizing the residual
};

struct AuditReport {
    std::string model;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool pass = true;
    std::vector<std::string> notes;

    nlohmann::json to_json() const;
};

struct AuditTolerances {
    double gradient_rel = 1e-5;
    double g_independence = 1e-12;
    double dissipation_slack = 1e-12;
    double pd_tol = 1e-10;
    double symmetry_tol = 1e-10;
};

// States drawn as F = I + 0.3 U (U uniform in [-1,1]^9, redrawn while
// det F <= 0.2), theta uniform in [0.5, 2] theta_ref, and W, Q, G with
// uniform random direction and magnitude uniform in [0, 1].
std::vector<ReferentialState> sample_states(int count, std::uint64_t seed,
                                            double theta_ref);

AuditReport coleman_noll_audit(const MaterialModel& m, int samples, std::uint64_t seed,
                               const FDScheme& scheme = {},
                               const AuditTolerances& tols = {});

}  // namespace secondsound
