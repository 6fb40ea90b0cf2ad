#include "zxzxz/universality.hpp"

#include "zxzxz/mitigation.hpp"
#include "zxzxz/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zxzxz {

namespace {

constexpr double kCoveredFidelity = 1.0 - 1e-9;

bool sample_covered(const XErrorModel& e, std::uint64_t seed, long long i) {
    const GateParams target{counter_uniform(seed, static_cast<std::uint64_t>(i), 0) * kPi,
                            counter_uniform(seed, static_cast<std::uint64_t>(i), 1) * kTwoPi,
                            counter_uniform(seed, static_cast<std::uint64_t>(i), 2) * kTwoPi};
    return mitigate_closed_form(target, e).achieved_fidelity >= kCoveredFidelity;
}

UniversalityReport finish_report(const XErrorModel& e, long long samples,
                                 long long covered) {
    UniversalityReport r;
    r.un_analytic = universality_analytic(e);
    r.mc_samples = samples;
    r.un_monte_carlo = static_cast<double>(covered) / static_cast<double>(samples);
    r.mc_stderr = std::sqrt(r.un_monte_carlo * (1.0 - r.un_monte_carlo) /
                            static_cast<double>(samples));
    const CaseKind kind = classify_case(e);
    r.delta_theta = (kind == CaseKind::Case1 || kind == CaseKind::Case3)
                        ? 2.0 * std::abs(canonicalize_error(e).delta())
                        : 0.0;
    return r;
}

} // namespace

bool is_coverable(const GateParams& target, const XErrorModel& e) {
    const double d = std::abs(canonicalize_error(e).delta());
    return target.theta <= kPi - 2.0 * d + 1e-12;
}

double universality_analytic(const XErrorModel& e) {
    const CaseKind kind = classify_case(e);
    if (kind == CaseKind::Ideal || kind == CaseKind::Case2) {
        return 1.0;
    }
    const double d = std::abs(canonicalize_error(e).delta());
    return std::max(0.0, 1.0 - 2.0 * d / kPi);
}

UniversalityReport universality_monte_carlo(const XErrorModel& e, long long samples,
                                            std::uint64_t seed) {
    if (samples < 1) {
        throw std::invalid_argument("universality_monte_carlo: samples must be >= 1");
    }
    long long covered = 0;
#pragma omp parallel for schedule(static) reduction(+ : covered)
    for (long long i = 0; i < samples; ++i) {
        covered += sample_covered(e, seed, i) ? 1 : 0;
    }
    return finish_report(e, samples, covered);
}

namespace reference {

UniversalityReport universality_monte_carlo_serial(const XErrorModel& e,
                                                   long long samples,
                                                   std::uint64_t seed) {
    if (samples < 1) {
        throw std::invalid_argument("universality_monte_carlo: samples must be >= 1");
    }
    long long covered = 0;
    for (long long i = 0; i < samples; ++i) {
        covered += sample_covered(e, seed, i) ? 1 : 0;
    }
    return finish_report(e, samples, covered);
}

} // namespace reference

AxisAngle axis_angle_from_unitary(const Unitary2& u) {
    if (u.tolerance() > kUnitaryInputTol) {
        throw std::domain_error("axis_angle_from_unitary: input beyond unitarity tolerance");
    }
    const cplx root = std::sqrt(u.det());
    const Unitary2 su = u.scaled(1.0 / root);

    double c = 0.5 * su.trace().real();
    c = std::clamp(c, -1.0, 1.0);
    const double vx = -0.5 * (su.u12() + su.u21()).imag();
    const double vy = 0.5 * (su.u21() - su.u12()).real();
    const double vz = 0.5 * (su.u22() - su.u11()).imag();
    const double m = std::sqrt(vx * vx + vy * vy + vz * vz);

    AxisAngle aa;
    if (m < 1e-12) {
        return aa; // identity up to phase
    }
    aa.rotation = 2.0 * std::atan2(m, c);
    aa.polar = std::acos(std::clamp(vz / m, -1.0, 1.0));
    aa.azimuth = wrap_two_pi(std::atan2(vy, vx));
    if (aa.rotation >= kTwoPi) {
        aa.rotation = 0.0;
    }
    return aa;
}

Unitary2 unitary_from_axis_angle(const AxisAngle& aa) {
    if (!std::isfinite(aa.polar) || !std::isfinite(aa.azimuth) ||
        !std::isfinite(aa.rotation)) {
        throw std::domain_error("unitary_from_axis_angle: non-finite field");
    }
    const double c = std::cos(aa.rotation / 2.0);
    const double s = std::sin(aa.rotation / 2.0);
    const double nx = std::sin(aa.polar) * std::cos(aa.azimuth);
    const double ny = std::sin(aa.polar) * std::sin(aa.azimuth);
    const double nz = std::cos(aa.polar);
    const cplx i(0.0, 1.0);
    return Unitary2(c - i * nz * s, (-i * nx - ny) * s, (-i * nx + ny) * s,
                    c + i * nz * s);
}

bool uncoverable_in_sphere(const XErrorModel& e, const AxisAngle& aa) {
    const double sp = std::sin(aa.polar);
    const double sw = std::sin(aa.rotation / 2.0);
    const double mag = std::sqrt(std::max(0.0, 1.0 - sw * sw * sp * sp));
    const double lim = std::abs(std::sin(canonicalize_error(e).delta()));
    return mag + 1e-12 < lim;
}

} // namespace zxzxz
