#pragma once

#include "zxzxz/decomposition.hpp"

#include <cstdint>

namespace zxzxz {

/// Axis-angle view of a single-qubit operation: rotation by `rotation`
/// about the unit axis with polar angle `polar` and azimuth `azimuth`.
struct AxisAngle {
    double polar = 0.0;    // [0, pi]
    double azimuth = 0.0;  // [0, 2pi)
    double rotation = 0.0; // [0, 2pi)
};

struct UniversalityReport {
    double un_analytic = 1.0;
    double un_monte_carlo = 1.0;
    long long mc_samples = 0;
    double mc_stderr = 0.0;
    double delta_theta = 0.0; // width of the uncovered theta slab
};

/// A target is exactly synthesizable under the error model iff
/// theta <= pi - 2|delta| (boundary included).
bool is_coverable(const GateParams& target, const XErrorModel& e);

/// Covered fraction of the parameter box: 1 for Ideal/Case2,
/// 1 - 2|delta|/pi for Case1/Case3.
double universality_analytic(const XErrorModel& e);

/// Estimate the covered fraction by drawing uniform targets and counting
/// those the closed-form mitigation brings to fidelity >= 1 - 1e-9.
/// Counter-based sampling: deterministic per seed under any schedule.
UniversalityReport universality_monte_carlo(const XErrorModel& e, long long samples,
                                            std::uint64_t seed);

namespace reference {
/// Serial baseline of the Monte Carlo estimator (identical counts).
UniversalityReport universality_monte_carlo_serial(const XErrorModel& e,
                                                   long long samples,
                                                   std::uint64_t seed);
} // namespace reference

/// Recover (polar, azimuth, rotation) after normalizing det to 1. Identity
/// (and -identity) maps to rotation 0 with the (0, 0) axis convention.
AxisAngle axis_angle_from_unitary(const Unitary2& u);

/// I cos(w/2) - i (sigma . n) sin(w/2).
Unitary2 unitary_from_axis_angle(const AxisAngle& aa);

/// True when sqrt(1 - sin²(w/2) sin²(polar)) < |sin delta|, i.e. the
/// rotation lies in the slab the erroneous decomposition cannot reach.
bool uncoverable_in_sphere(const XErrorModel& e, const AxisAngle& aa);

} // namespace zxzxz
