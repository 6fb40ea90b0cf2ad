#pragma once

#include <complex>
#include <numbers>
#include <utility>

namespace zxzxz {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance for matrices built by the library itself vs. matrices handed in
// by callers (file input, CLI).
inline constexpr double kUnitaryBuildTol = 1e-12;
inline constexpr double kUnitaryInputTol = 1e-10;

/// Canonical (theta, phi, lambda) triple of a single-qubit gate, radians.
/// Canonical means theta in [0, pi], phi and lambda in [0, 2pi).
struct GateParams {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
};

/// 2x2 complex matrix that is unitary within a stored tolerance.
/// Construction validates U†U = I and |det U| = 1 elementwise; a failure
/// throws std::domain_error.
class Unitary2 {
public:
    Unitary2(cplx u11, cplx u12, cplx u21, cplx u22, double tol = kUnitaryBuildTol);

    cplx u11() const { return u11_; }
    cplx u12() const { return u12_; }
    cplx u21() const { return u21_; }
    cplx u22() const { return u22_; }
    double tolerance() const { return tol_; }

    Unitary2 dagger() const;
    cplx trace() const { return u11_ + u22_; }
    cplx det() const { return u11_ * u22_ - u12_ * u21_; }

    /// Multiply by a scalar phase factor of unit magnitude.
    Unitary2 scaled(cplx phase) const;

    friend Unitary2 operator*(const Unitary2& a, const Unitary2& b);

private:
    cplx u11_, u12_, u21_, u22_;
    double tol_;
};

/// Wrap an angle into [0, 2pi).
double wrap_two_pi(double a);
/// Wrap an angle into (-pi, pi].
double wrap_pm_pi(double a);
/// True when a == b modulo 2pi within tol.
bool angle_equal_mod_two_pi(double a, double b, double tol);

/// The standard three-parameter single-qubit matrix
///   [[cos(t/2), -i e^{i l} sin(t/2)], [-i e^{i p} sin(t/2), e^{i(l+p)} cos(t/2)]].
Unitary2 mat_from_params(const GateParams& p);

/// Reduce an arbitrary (theta, phi, lambda) to the canonical box using the
/// theta-period and theta-negation symmetries. The matrix is preserved up to
/// a global phase.
GateParams canonicalize_params(double raw_theta, double raw_phi, double raw_lambda);

/// Same reduction, also reporting the phase alpha with
/// mat(raw) = e^{i alpha} mat(canonical). alpha is always 0 or pi.
std::pair<GateParams, double> canonicalize_params_tracked(double raw_theta,
                                                          double raw_phi,
                                                          double raw_lambda);

bool is_canonical(const GateParams& p, double tol = 1e-12);

/// 1 - |Tr(a† b)| / 2. Zero exactly when a and b differ by a global phase.
double phase_invariant_distance(const Unitary2& a, const Unitary2& b);

/// Recover canonical parameters from a unitary, up to global phase.
/// At theta = 0 the full diagonal phase goes to phi (lambda = 0); at
/// theta = pi the off-diagonal phases are read into lambda and phi directly.
GateParams params_from_matrix(const Unitary2& u);

} // namespace zxzxz
