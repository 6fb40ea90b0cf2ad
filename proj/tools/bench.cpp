// Serial-vs-OpenMP timing for the three data-parallel kernels: Monte Carlo
// coverage, fidelity quadrature, and sweep row evaluation. Each pair is also
// checked for identical results.

#include "zxzxz/fidelity.hpp"
#include "zxzxz/sweep.hpp"
#include "zxzxz/universality.hpp"

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace zxzxz;

double seconds(const std::chrono::steady_clock::time_point& a,
               const std::chrono::steady_clock::time_point& b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, seconds(t0, t1));
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool same) {
    std::printf("%-28s %10.4fs %10.4fs %8.2fx   %s\n", name, serial, parallel,
                serial / parallel, same ? "identical" : "MISMATCH");
}

double ori_integrand(double theta, const void* ctx) {
    const auto* e = static_cast<const XErrorModel*>(ctx);
    return original_fidelity_analytic({theta, 0.0, 0.0}, *e);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run serial code\n");
#endif
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const XErrorModel e = XErrorModel::from_delta(0.1 * kPi);
        const long long samples = 400000;
        UniversalityReport rs, rp;
        const double ts = time_best_of(
            3, [&] { rs = reference::universality_monte_carlo_serial(e, samples, 42); });
        const double tp =
            time_best_of(3, [&] { rp = universality_monte_carlo(e, samples, 42); });
        report("monte-carlo coverage", ts, tp,
               rs.un_monte_carlo == rp.un_monte_carlo);
    }

    {
        const XErrorModel e = XErrorModel::from_delta(0.13 * kPi, 0.4, 0.9);
        const int points = 4000000;
        double vs = 0.0, vp = 0.0;
        const double ts = time_best_of(3, [&] {
            vs = detail::reference::integrate_midpoint_serial(0.0, kPi, points,
                                                              ori_integrand, &e);
        });
        const double tp = time_best_of(
            3, [&] { vp = detail::integrate_midpoint(0.0, kPi, points, ori_integrand, &e); });
        report("fidelity quadrature", ts, tp, vs == vp);
    }

    {
        SweepConfig cfg;
        cfg.mode = SweepMode::FidelityVsX;
        cfg.target.parametric = true;
        cfg.target.coeff_theta = 1.0;
        cfg.target.coeff_phi = 2.0;
        cfg.target.coeff_lambda = 2.0;
        cfg.error_base = XErrorModel::from_delta(0.2 * kPi, 0.3 * kPi, 0.2 * kPi);
        cfg.axis = {"x", 0.0, 1.0, 101};
        cfg.outputs = {"f_best_analytic", "f_best_numeric"};
        cfg.seed = 7;
        SweepTable s, p;
        const double ts = time_best_of(3, [&] { s = reference::run_sweep_serial(cfg); });
        const double tp = time_best_of(3, [&] { p = run_sweep(cfg); });
        report("optimizer-backed sweep", ts, tp, s.rows == p.rows);
    }
    return 0;
}
