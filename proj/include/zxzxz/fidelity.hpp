#pragma once

#include "zxzxz/decomposition.hpp"

#include <optional>

namespace zxzxz {

struct FidelityReport {
    double f_original = 1.0;
    double f_best = 1.0;
    bool coverable = true;
    CaseKind kind = CaseKind::Ideal;
};

/// Process fidelity (Tr(Ui†Ui) + |Tr(Ut†Ui)|²) / 6 for 2x2 unitaries.
/// Lies in [1/3, 1] for unitary inputs.
double process_fidelity(const Unitary2& u_tar, const Unitary2& u_imp);

/// Fidelity of the erroneous decomposition run at the target's own
/// parameters, closed form. Depends only on theta and the error model.
double original_fidelity_analytic(const GateParams& p, const XErrorModel& e);

/// Maximum fidelity achievable by retuning the implemented parameters:
/// 1 when the target is coverable, (1 + 2 sin²(theta/2 + |delta|)) / 3
/// otherwise. Falls back to a numeric search when sin(theta_x) = 0.
double best_fidelity_analytic(const GateParams& p, const XErrorModel& e);

/// Closed form of the box-averaged original fidelity when the error model
/// matches one of the special shapes; nullopt otherwise.
std::optional<double> average_original_fidelity_closed_form(const XErrorModel& e);

/// Midpoint quadrature of original_fidelity_analytic over theta in [0, pi]
/// (the integrand does not depend on phi or lambda).
double average_original_fidelity_quadrature(const XErrorModel& e, int points);

/// Box-averaged original fidelity: closed form when available, quadrature
/// with the given number of points otherwise. points must be >= 64.
double average_original_fidelity(const XErrorModel& e, int quadrature_points = 100000);

/// Box-averaged best fidelity, 1 - (2|delta| - sin(2|delta|)) / (3 pi).
double average_best_fidelity(const XErrorModel& e);

/// Midpoint quadrature of best_fidelity_analytic over theta in [0, pi].
double average_best_fidelity_quadrature(const XErrorModel& e, int points);

FidelityReport fidelity_report(const GateParams& p, const XErrorModel& e);

namespace detail {
/// Composite midpoint rule on [a, b]. Function values are computed into a
/// buffer (in parallel when OpenMP is enabled) and summed in index order, so
/// the result does not depend on the thread count.
double integrate_midpoint(double a, double b, int n, double (*f)(double, const void*),
                          const void* ctx);

namespace reference {
/// Plain serial accumulation loop, kept as the comparison baseline.
double integrate_midpoint_serial(double a, double b, int n,
                                 double (*f)(double, const void*), const void* ctx);
} // namespace reference
} // namespace detail

} // namespace zxzxz
