#pragma once

#include "zxzxz/decomposition.hpp"

#include <cstdint>

namespace zxzxz {

struct SearchConfig {
    int grid_per_axis = 10;
    double tol = 1e-8;
    int max_iters = 400;
    int restarts = 4;
    std::uint64_t rng_seed = 0x7a5a5eedULL;
};

enum class MitigationMethod { ClosedForm, NumericSearch };

struct MitigationResult {
    GateParams implemented;   // canonical representative of the raw triple
    double raw_theta = 0.0;   // the knobs actually fed to the decomposition
    double raw_phi = 0.0;
    double raw_lambda = 0.0;
    double achieved_fidelity = 1.0;
    bool coverable = true;
    MitigationMethod method = MitigationMethod::ClosedForm;
    bool converged = true;
};

/// Retuned parameters from the closed form: the theta knob solves
/// sin²((theta_imp - a_plus)/2) = sin²(theta/2)/sin²(theta_x) (clamped to the
/// a = 1 boundary when unreachable) and the phase knobs solve the effective
/// phases back to the target's. Root choice: nearest to the target theta,
/// ties toward the smaller knob. Falls back to the numeric search when
/// sin(theta_x) = 0.
MitigationResult mitigate_closed_form(const GateParams& target, const XErrorModel& e);

/// Derivative-free maximization of the process fidelity over the implemented
/// triple: coarse grid seeding, then Nelder-Mead refinement from the best
/// grid cells. The unmitigated candidate (implemented = target) is always
/// seeded, so the result never falls below the original fidelity.
/// Deterministic for a fixed rng_seed.
MitigationResult mitigate_numeric(const GateParams& target, const XErrorModel& e,
                                  const SearchConfig& cfg = {});

} // namespace zxzxz
