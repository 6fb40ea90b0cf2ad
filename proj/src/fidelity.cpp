#include "zxzxz/fidelity.hpp"

#include "zxzxz/mitigation.hpp"
#include "zxzxz/universality.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace zxzxz {

double process_fidelity(const Unitary2& u_tar, const Unitary2& u_imp) {
    if (u_tar.tolerance() > kUnitaryInputTol || u_imp.tolerance() > kUnitaryInputTol) {
        throw std::domain_error("process_fidelity: input beyond unitarity tolerance");
    }
    const double imp_norm = (u_imp.dagger() * u_imp).trace().real();
    const double overlap = std::abs((u_tar.dagger() * u_imp).trace());
    return (imp_norm + overlap * overlap) / 6.0;
}

double original_fidelity_analytic(const GateParams& p, const XErrorModel& e) {
    const XErrorModel ec = canonicalize_error(e);
    const double h = p.theta / 2.0;
    const double hp = ec.a_plus() / 2.0;
    const double hm = ec.a_minus() / 2.0;
    const double fx = std::cos(h) * std::cos(h - hp) * std::cos(hp) +
                      std::cos(h) * std::sin(h - hp) * std::sin(hp) * std::cos(ec.theta_x) +
                      std::sin(h) * std::sin(h - hp) * std::cos(hm) * std::sin(ec.theta_x);
    return (1.0 + 2.0 * fx * fx) / 3.0;
}

double best_fidelity_analytic(const GateParams& p, const XErrorModel& e) {
    const XErrorModel ec = canonicalize_error(e);
    const double delta = ec.delta();
    if (std::abs(delta) > kPi / 2.0 + 1e-12) {
        throw std::domain_error("best_fidelity_analytic: |delta| beyond pi/2");
    }
    const double sx = std::sin(ec.theta_x);
    if (std::abs(sx) < 1e-12) {
        // The closed form divides by sin²(theta_x); hand this edge to the
        // optimizer instead.
        return mitigate_numeric(p, ec).achieved_fidelity;
    }
    const double s = std::sin(p.theta / 2.0);
    const double a0 = (s * s) / (sx * sx);
    if (a0 <= 1.0) {
        return 1.0;
    }
    const double sb = std::sin(p.theta / 2.0 + std::abs(delta));
    return (1.0 + 2.0 * sb * sb) / 3.0;
}

std::optional<double> average_original_fidelity_closed_form(const XErrorModel& e) {
    const XErrorModel ec = canonicalize_error(e);
    const CaseKind kind = classify_case(ec);
    switch (kind) {
    case CaseKind::Ideal:
        return 1.0;
    case CaseKind::Case2: {
        const bool phi_zero = angle_equal_mod_two_pi(ec.phi_x, 0.0, kCaseTol);
        const bool lambda_zero = angle_equal_mod_two_pi(ec.lambda_x, 0.0, kCaseTol);
        if (phi_zero || lambda_zero) {
            // single phase-angle error: theta-independent fidelity
            const double c = phi_zero ? std::cos(ec.lambda_x / 2.0)
                                      : std::cos(ec.phi_x / 2.0);
            const double c2 = c * c;
            return (1.0 + 2.0 * c2 * c2) / 3.0;
        }
        const double pp = std::cos(ec.a_plus() / 2.0) * std::cos(ec.lambda_x / 2.0) *
                          std::cos(ec.phi_x / 2.0);
        const double qq = std::sin(ec.lambda_x / 2.0) * std::sin(ec.phi_x / 2.0);
        return 1.0 / 3.0 + 2.0 * pp * pp / 3.0 + qq * qq / 3.0 -
               std::sin(ec.lambda_x) * std::sin(ec.phi_x) * std::sin(ec.a_plus()) /
                   (3.0 * kPi);
    }
    case CaseKind::Case1: {
        const double s2 = std::sin(ec.delta() / 2.0) * std::sin(ec.delta() / 2.0);
        return 1.0 - (4.0 * s2 - 3.0 * s2 * s2) / 3.0;
    }
    case CaseKind::Case3:
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

struct ErrCtx {
    XErrorModel e;
};

double ori_integrand(double theta, const void* ctx) {
    const auto* c = static_cast<const ErrCtx*>(ctx);
    return original_fidelity_analytic({theta, 0.0, 0.0}, c->e);
}

double best_integrand(double theta, const void* ctx) {
    const auto* c = static_cast<const ErrCtx*>(ctx);
    return best_fidelity_analytic({theta, 0.0, 0.0}, c->e);
}

} // namespace

double average_original_fidelity_quadrature(const XErrorModel& e, int points) {
    if (points < 64) {
        throw std::invalid_argument("average_original_fidelity: points must be >= 64");
    }
    const ErrCtx ctx{canonicalize_error(e)};
    return detail::integrate_midpoint(0.0, kPi, points, ori_integrand, &ctx) / kPi;
}

double average_original_fidelity(const XErrorModel& e, int quadrature_points) {
    if (const auto closed = average_original_fidelity_closed_form(e)) {
        return *closed;
    }
    return average_original_fidelity_quadrature(e, quadrature_points);
}

double average_best_fidelity(const XErrorModel& e) {
    const double d = std::abs(canonicalize_error(e).delta());
    if (d > kPi / 2.0 + 1e-12) {
        throw std::domain_error("average_best_fidelity: |delta| beyond pi/2");
    }
    return 1.0 - (2.0 * d - std::sin(2.0 * d)) / (3.0 * kPi);
}

double average_best_fidelity_quadrature(const XErrorModel& e, int points) {
    if (points < 64) {
        throw std::invalid_argument("average_best_fidelity_quadrature: points must be >= 64");
    }
    const ErrCtx ctx{canonicalize_error(e)};
    return detail::integrate_midpoint(0.0, kPi, points, best_integrand, &ctx) / kPi;
}

FidelityReport fidelity_report(const GateParams& p, const XErrorModel& e) {
    FidelityReport r;
    r.kind = classify_case(e);
    r.f_original = original_fidelity_analytic(p, e);
    r.f_best = best_fidelity_analytic(p, e);
    r.coverable = is_coverable(p, e);
    return r;
}

namespace detail {

double integrate_midpoint(double a, double b, int n, double (*f)(double, const void*),
                          const void* ctx) {
    const double h = (b - a) / n;
    std::vector<double> values(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        values[static_cast<std::size_t>(i)] = f(a + (i + 0.5) * h, ctx);
    }
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += values[static_cast<std::size_t>(i)];
    }
    return sum * h;
}

namespace reference {

double integrate_midpoint_serial(double a, double b, int n,
                                 double (*f)(double, const void*), const void* ctx) {
    const double h = (b - a) / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += f(a + (i + 0.5) * h, ctx);
    }
    return sum * h;
}

} // namespace reference
} // namespace detail

} // namespace zxzxz
