#include "zxzxz/decomposition.hpp"

#include <cmath>
#include <stdexcept>

namespace zxzxz {

namespace {

// Below this, sin(theta_x) or sin((theta - a_plus)/2) is treated as zero and
// the effective gate folds to a diagonal.
constexpr double kDegenerateTol = 1e-12;

} // namespace

XErrorModel canonicalize_error(const XErrorModel& e) {
    const GateParams c = canonicalize_params(e.theta_x, e.phi_x, e.lambda_x);
    return {c.theta, c.phi, c.lambda};
}

const char* to_string(CaseKind k) {
    switch (k) {
    case CaseKind::Ideal: return "ideal";
    case CaseKind::Case1: return "case1";
    case CaseKind::Case2: return "case2";
    case CaseKind::Case3: return "case3";
    }
    return "?";
}

CaseKind classify_case(const XErrorModel& e, double tol) {
    if (tol <= 0.0) {
        throw std::invalid_argument("classify_case: tol must be positive");
    }
    const bool delta_zero = angle_equal_mod_two_pi(e.theta_x, kPi / 2.0, tol);
    const bool phi_zero = angle_equal_mod_two_pi(e.phi_x, 0.0, tol);
    const bool lambda_zero = angle_equal_mod_two_pi(e.lambda_x, 0.0, tol);
    if (delta_zero) {
        return (phi_zero && lambda_zero) ? CaseKind::Ideal : CaseKind::Case2;
    }
    return (phi_zero && lambda_zero) ? CaseKind::Case1 : CaseKind::Case3;
}

Unitary2 z_rotation(double angle) {
    if (!std::isfinite(angle)) {
        throw std::domain_error("z_rotation: non-finite angle");
    }
    return Unitary2(std::polar(1.0, -angle / 2.0), 0.0, 0.0,
                    std::polar(1.0, angle / 2.0));
}

Unitary2 ideal_decomposition(const GateParams& p) {
    const Unitary2 x = mat_from_params({kPi / 2.0, 0.0, 0.0});
    return z_rotation(p.phi - kPi / 2.0) * x * z_rotation(kPi - p.theta) * x *
           z_rotation(p.lambda - kPi / 2.0);
}

Unitary2 erroneous_x_gate(const XErrorModel& e) {
    return mat_from_params({e.theta_x, e.phi_x, e.lambda_x});
}

Unitary2 erroneous_decomposition(const GateParams& p, const XErrorModel& e) {
    const Unitary2 x = erroneous_x_gate(e);
    return z_rotation(p.phi - kPi / 2.0) * x * z_rotation(kPi - p.theta) * x *
           z_rotation(p.lambda - kPi / 2.0);
}

Unitary2 erroneous_decomposition_closed_form(const GateParams& p,
                                             const XErrorModel& e) {
    const double ap = e.a_plus();
    const double cc = std::cos(e.theta_x / 2.0) * std::cos(e.theta_x / 2.0);
    const double ss = std::sin(e.theta_x / 2.0) * std::sin(e.theta_x / 2.0);
    const double sx = std::sin(e.theta_x);
    const double th = p.theta;

    const cplx u11 = std::polar(cc, th / 2.0) + std::polar(ss, -th / 2.0 + ap);
    const cplx u12 = (std::polar(1.0, -th / 2.0 + p.lambda + e.lambda_x + ap) -
                      std::polar(1.0, th / 2.0 + p.lambda + e.lambda_x)) *
                     (sx / 2.0);
    const cplx u21 = (std::polar(1.0, -th / 2.0 + p.phi + e.phi_x + ap) -
                      std::polar(1.0, th / 2.0 + p.phi + e.phi_x)) *
                     (sx / 2.0);
    const cplx u22 =
        std::polar(ss, th / 2.0 + p.lambda + p.phi + ap) +
        std::polar(cc, -th / 2.0 + p.lambda + p.phi + 2.0 * ap);
    return Unitary2(u11, u12, u21, u22);
}

CasePhases closed_form_phases(double theta_imp, const XErrorModel& e) {
    const double ap = e.a_plus();
    const double a = theta_imp / 2.0;
    const double b = -theta_imp / 2.0 + ap;
    const double cc = std::cos(e.theta_x / 2.0) * std::cos(e.theta_x / 2.0);
    const double ss = std::sin(e.theta_x / 2.0) * std::sin(e.theta_x / 2.0);

    CasePhases g;
    g.gamma3 = std::atan2(std::sin(a) * cc + std::sin(b) * ss,
                          std::cos(a) * cc + std::cos(b) * ss);
    g.gamma4 = std::atan2(std::sin(a) - std::sin(b), std::cos(a) - std::cos(b));
    g.gamma5 = std::atan2(std::sin(a) * ss + std::sin(b) * cc,
                          std::cos(a) * ss + std::cos(b) * cc);
    g.off_diagonal_defined =
        std::abs(std::sin((theta_imp - ap) / 2.0)) > kDegenerateTol &&
        std::abs(std::sin(e.theta_x)) > kDegenerateTol;
    return g;
}

EffectiveParams effective_params_case2(const GateParams& p, const XErrorModel& e) {
    if (classify_case(e) != CaseKind::Case2) {
        throw std::domain_error("effective_params_case2: error model is not Case2");
    }
    const double ap = e.a_plus();
    auto [canon, alpha] = canonicalize_params_tracked(
        p.theta - ap, p.phi + e.phi_x, p.lambda + e.lambda_x);
    // gamma2 resolved against the signed parameterization is a_plus/2; the
    // physical product carries the extra e^{-i(lambda+phi)/2}.
    const double gamma2 = std::atan2(std::sin(ap / 2.0), std::cos(ap / 2.0));
    const double phase =
        wrap_two_pi(gamma2 + alpha - (p.lambda + p.phi) / 2.0);
    return {canon, phase};
}

EffectiveParams effective_params_case3(const GateParams& p, const XErrorModel& e) {
    const CaseKind kind = classify_case(e);
    if (kind != CaseKind::Case1 && kind != CaseKind::Case3) {
        throw std::domain_error("effective_params_case3: error model is not Case1/Case3");
    }
    const XErrorModel ec = canonicalize_error(e);
    const double ap = ec.a_plus();
    const double half = (p.theta - ap) / 2.0;
    const double sx = std::sin(ec.theta_x);
    const double off = sx * std::sin(half);

    if (std::abs(off) <= kDegenerateTol) {
        // Diagonal gate: theta_eff = 0, phi_eff = 0, everything in lambda_eff.
        const Unitary2 u = erroneous_decomposition_closed_form(p, ec);
        const double ph11 = std::arg(u.u11());
        const double ph22 = std::arg(u.u22());
        GateParams params{0.0, 0.0, wrap_two_pi(ph22 - ph11)};
        return {params, wrap_two_pi(ph11 - (p.lambda + p.phi) / 2.0)};
    }

    const CasePhases g = closed_form_phases(p.theta, ec);
    const double mag = std::abs(off);
    const double theta_eff =
        2.0 * std::atan2(mag, std::sqrt(std::max(0.0, 1.0 - mag * mag)));
    const double shift = g.gamma4 - kPi / 2.0 - g.gamma3;
    GateParams params{theta_eff, wrap_two_pi(p.phi + ec.phi_x + shift),
                      wrap_two_pi(p.lambda + ec.lambda_x + shift)};
    const double phase = wrap_two_pi(g.gamma3 - (p.lambda + p.phi) / 2.0);
    return {params, phase};
}

} // namespace zxzxz
