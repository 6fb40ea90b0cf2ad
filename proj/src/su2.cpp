#include "zxzxz/su2.hpp"

#include <cmath>
#include <stdexcept>

namespace zxzxz {

namespace {

bool all_finite(cplx a, cplx b, cplx c, cplx d) {
    return std::isfinite(a.real()) && std::isfinite(a.imag()) &&
           std::isfinite(b.real()) && std::isfinite(b.imag()) &&
           std::isfinite(c.real()) && std::isfinite(c.imag()) &&
           std::isfinite(d.real()) && std::isfinite(d.imag());
}

} // namespace

Unitary2::Unitary2(cplx u11, cplx u12, cplx u21, cplx u22, double tol)
    : u11_(u11), u12_(u12), u21_(u21), u22_(u22), tol_(tol) {
    if (!all_finite(u11, u12, u21, u22)) {
        throw std::domain_error("Unitary2: non-finite entry");
    }
    // U†U = I, elementwise.
    const cplx g11 = std::conj(u11_) * u11_ + std::conj(u21_) * u21_;
    const cplx g12 = std::conj(u11_) * u12_ + std::conj(u21_) * u22_;
    const cplx g22 = std::conj(u12_) * u12_ + std::conj(u22_) * u22_;
    if (std::abs(g11 - 1.0) > tol || std::abs(g22 - 1.0) > tol ||
        std::abs(g12) > tol) {
        throw std::domain_error("Unitary2: matrix is not unitary within tolerance");
    }
    if (std::abs(std::abs(det()) - 1.0) > tol) {
        throw std::domain_error("Unitary2: |det| differs from 1 beyond tolerance");
    }
}

Unitary2 Unitary2::dagger() const {
    return Unitary2(std::conj(u11_), std::conj(u21_), std::conj(u12_),
                    std::conj(u22_), tol_);
}

Unitary2 Unitary2::scaled(cplx phase) const {
    return Unitary2(phase * u11_, phase * u12_, phase * u21_, phase * u22_,
                    tol_ + 1e-15);
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
    return Unitary2(a.u11_ * b.u11_ + a.u12_ * b.u21_,
                    a.u11_ * b.u12_ + a.u12_ * b.u22_,
                    a.u21_ * b.u11_ + a.u22_ * b.u21_,
                    a.u21_ * b.u12_ + a.u22_ * b.u22_,
                    a.tol_ + b.tol_ + 1e-15);
}

double wrap_two_pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative can land exactly on 2pi after the correction
    if (r >= kTwoPi) {
        r -= kTwoPi;
    }
    return r;
}

double wrap_pm_pi(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r <= -kPi) {
        r += kTwoPi;
    }
    return r;
}

bool angle_equal_mod_two_pi(double a, double b, double tol) {
    return std::abs(wrap_pm_pi(a - b)) <= tol;
}

Unitary2 mat_from_params(const GateParams& p) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.phi) || !std::isfinite(p.lambda)) {
        throw std::domain_error("mat_from_params: non-finite parameter");
    }
    const double c = std::cos(p.theta / 2.0);
    const double s = std::sin(p.theta / 2.0);
    const cplx mi(0.0, -1.0);
    return Unitary2(cplx(c, 0.0),
                    mi * std::polar(s, p.lambda),
                    mi * std::polar(s, p.phi),
                    std::polar(c, p.lambda + p.phi));
}

std::pair<GateParams, double> canonicalize_params_tracked(double raw_theta,
                                                          double raw_phi,
                                                          double raw_lambda) {
    if (!std::isfinite(raw_theta) || !std::isfinite(raw_phi) ||
        !std::isfinite(raw_lambda)) {
        throw std::domain_error("canonicalize_params: non-finite input");
    }
    double phase = 0.0;
    // theta has period 4pi; a 2pi shift costs a factor e^{i pi}.
    double t = std::remainder(raw_theta, 2.0 * kTwoPi); // [-2pi, 2pi]
    double phi = raw_phi;
    double lambda = raw_lambda;
    if (t > kPi) {
        t -= kTwoPi;
        phase += kPi;
    } else if (t < -kPi) {
        t += kTwoPi;
        phase += kPi;
    }
    // U(-t, phi, lambda) = U(t, phi + pi, lambda + pi), no phase.
    if (t < 0.0) {
        t = -t;
        phi += kPi;
        lambda += kPi;
    }
    GateParams p{t, wrap_two_pi(phi), wrap_two_pi(lambda)};
    return {p, wrap_two_pi(phase)};
}

GateParams canonicalize_params(double raw_theta, double raw_phi, double raw_lambda) {
    return canonicalize_params_tracked(raw_theta, raw_phi, raw_lambda).first;
}

bool is_canonical(const GateParams& p, double tol) {
    return p.theta >= -tol && p.theta <= kPi + tol && p.phi >= -tol &&
           p.phi < kTwoPi + tol && p.lambda >= -tol && p.lambda < kTwoPi + tol;
}

double phase_invariant_distance(const Unitary2& a, const Unitary2& b) {
    if (a.tolerance() > kUnitaryInputTol || b.tolerance() > kUnitaryInputTol) {
        throw std::domain_error("phase_invariant_distance: input beyond unitarity tolerance");
    }
    const cplx t = (a.dagger() * b).trace();
    double d = 1.0 - 0.5 * std::abs(t);
    if (d < 0.0) {
        d = 0.0;
    }
    if (d > 1.0) {
        d = 1.0;
    }
    return d;
}

GateParams params_from_matrix(const Unitary2& u) {
    if (u.tolerance() > kUnitaryInputTol) {
        throw std::domain_error("params_from_matrix: input beyond unitarity tolerance");
    }
    const double c = std::abs(u.u11());
    const double s = std::abs(u.u21());
    const double theta = 2.0 * std::atan2(s, c);

    constexpr double degenerate = 1e-13;
    double phi = 0.0;
    double lambda = 0.0;
    if (s <= degenerate) {
        // diagonal gate: lambda fixed to 0, the whole relative phase in phi
        phi = std::arg(u.u22() * std::conj(u.u11()));
        lambda = 0.0;
    } else if (c <= degenerate) {
        // anti-diagonal gate: read both phases off the entries directly
        const cplx i(0.0, 1.0);
        lambda = std::arg(i * u.u12());
        phi = std::arg(i * u.u21());
    } else {
        // generic: strip the global phase via u11, undo the -i factors
        const cplx ref = std::conj(u.u11());
        phi = std::arg(u.u21() * ref) + kPi / 2.0;
        lambda = std::arg(u.u12() * ref) + kPi / 2.0;
    }
    return canonicalize_params(theta, phi, lambda);
}

} // namespace zxzxz
