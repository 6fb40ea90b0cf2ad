#pragma once

#include "zxzxz/su2.hpp"

namespace zxzxz {

/// Coherent-error state of the physical X_{pi/2} gate. The ideal pulse has
/// (theta_x, phi_x, lambda_x) = (pi/2, 0, 0); delta is the over/under
/// rotation theta_x - pi/2.
struct XErrorModel {
    double theta_x = kPi / 2.0;
    double phi_x = 0.0;
    double lambda_x = 0.0;

    double delta() const { return theta_x - kPi / 2.0; }
    double a_plus() const { return lambda_x + phi_x; }
    double a_minus() const { return lambda_x - phi_x; }

    static XErrorModel ideal() { return {}; }
    static XErrorModel from_delta(double delta, double phi_x = 0.0,
                                  double lambda_x = 0.0) {
        return {kPi / 2.0 + delta, phi_x, lambda_x};
    }
};

/// Fold theta_x into [0, pi] (so delta lands in [-pi/2, pi/2]) using the
/// same gate symmetries as canonicalize_params.
XErrorModel canonicalize_error(const XErrorModel& e);

enum class CaseKind { Ideal, Case1, Case2, Case3 };

const char* to_string(CaseKind k);

inline constexpr double kCaseTol = 1e-9;

/// Kind of coherent error: Case1 touches only theta_x, Case2 only the
/// phase angles, Case3 both. Angle comparisons are modulo 2pi.
CaseKind classify_case(const XErrorModel& e, double tol = kCaseTol);

/// Effective canonical parameters of an erroneous decomposition, with the
/// phase that reconstructs the raw product:
///   erroneous_decomposition(p, e) = e^{i global_phase} * mat_from_params(params).
struct EffectiveParams {
    GateParams params;
    double global_phase = 0.0;
};

/// Phase bookkeeping of the general closed form, exposed for the phase
/// solve in the mitigation module and for identity checks in tests.
/// gamma4 (and gamma5's role in the identity) is undefined when the
/// effective gate degenerates to a diagonal.
struct CasePhases {
    double gamma3 = 0.0;
    double gamma4 = 0.0;
    double gamma5 = 0.0;
    bool off_diagonal_defined = true;
};

/// diag(e^{-i angle/2}, e^{+i angle/2})
Unitary2 z_rotation(double angle);

/// Z_{phi-pi/2} X_{pi/2} Z_{pi-theta} X_{pi/2} Z_{lambda-pi/2}. Equals
/// mat_from_params(p) up to the global phase e^{-i(lambda+phi)/2}.
Unitary2 ideal_decomposition(const GateParams& p);

/// The physical X_{pi/2} with its coherent error, no canonicalization.
Unitary2 erroneous_x_gate(const XErrorModel& e);

/// Five-gate product with both X_{pi/2} pulses replaced by the erroneous
/// gate. Direct matrix multiplication; accepts any finite angles.
Unitary2 erroneous_decomposition(const GateParams& p, const XErrorModel& e);

/// Entrywise closed form of the same product with the global phase
/// e^{-i(lambda+phi)/2} removed. Kept as an independent route; tests check
/// it against the direct product.
Unitary2 erroneous_decomposition_closed_form(const GateParams& p,
                                             const XErrorModel& e);

/// Phases gamma3/gamma4/gamma5 of the closed form, evaluated at an
/// arbitrary (possibly non-canonical) implemented theta.
CasePhases closed_form_phases(double theta_imp, const XErrorModel& e);

/// Effective parameters for a pure phase-angle error (theta_x = pi/2):
/// theta - a_plus, phi + phi_x, lambda + lambda_x, canonicalized.
EffectiveParams effective_params_case2(const GateParams& p, const XErrorModel& e);

/// Effective parameters for errors involving theta_x (Case1 is the
/// phi_x = lambda_x = 0 specialization). Degenerate diagonals (sin theta_x = 0
/// or theta - a_plus = 0 mod 2pi) fold the whole phase into lambda_eff.
EffectiveParams effective_params_case3(const GateParams& p, const XErrorModel& e);

} // namespace zxzxz
