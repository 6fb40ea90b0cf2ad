#pragma once

#include "zxzxz/decomposition.hpp"
#include "zxzxz/su2.hpp"

#include <cmath>
#include <random>

namespace zxzxz::testing {

inline GateParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    return {u01(rng) * kPi, u01(rng) * kTwoPi, u01(rng) * kTwoPi};
}

inline XErrorModel random_error(std::mt19937_64& rng, double max_abs_delta = kPi / 2.0) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    return XErrorModel::from_delta((2.0 * u01(rng) - 1.0) * max_abs_delta,
                                   u01(rng) * kTwoPi, u01(rng) * kTwoPi);
}

/// Largest entrywise difference after aligning the global phase of b to a.
inline double aligned_entry_distance(const Unitary2& a, const Unitary2& b) {
    const cplx overlap = (b.dagger() * a).trace();
    const cplx phase = std::abs(overlap) > 1e-14 ? overlap / std::abs(overlap) : cplx(1.0);
    double d = 0.0;
    d = std::max(d, std::abs(a.u11() - phase * b.u11()));
    d = std::max(d, std::abs(a.u12() - phase * b.u12()));
    d = std::max(d, std::abs(a.u21() - phase * b.u21()));
    d = std::max(d, std::abs(a.u22() - phase * b.u22()));
    return d;
}

inline double max_entry_distance(const Unitary2& a, const Unitary2& b) {
    double d = 0.0;
    d = std::max(d, std::abs(a.u11() - b.u11()));
    d = std::max(d, std::abs(a.u12() - b.u12()));
    d = std::max(d, std::abs(a.u21() - b.u21()));
    d = std::max(d, std::abs(a.u22() - b.u22()));
    return d;
}

} // namespace zxzxz::testing
