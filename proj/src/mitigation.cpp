#include "zxzxz/mitigation.hpp"

#include "zxzxz/fidelity.hpp"
#include "zxzxz/rng.hpp"
#include "zxzxz/universality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace zxzxz {

namespace {

void validate_config(const SearchConfig& cfg) {
    if (cfg.grid_per_axis < 2) {
        throw std::invalid_argument("SearchConfig: grid_per_axis must be >= 2");
    }
    if (!(cfg.tol > 0.0)) {
        throw std::invalid_argument("SearchConfig: tol must be positive");
    }
    if (cfg.max_iters < 1 || cfg.restarts < 1) {
        throw std::invalid_argument("SearchConfig: max_iters and restarts must be >= 1");
    }
}

void validate_target(const GateParams& p) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.phi) || !std::isfinite(p.lambda)) {
        throw std::domain_error("mitigate: non-finite target");
    }
}

double fidelity_of_knobs(const Unitary2& u_tar, const GateParams& knobs,
                         const XErrorModel& e) {
    return process_fidelity(u_tar, erroneous_decomposition(knobs, e));
}

using Point = std::array<double, 3>;

struct BestTracker {
    Point x{};
    double f = -1.0;

    void offer(const Point& p, double value) {
        if (value > f) {
            f = value;
            x = p;
        }
    }
};

double simplex_diameter(const std::array<Point, 4>& v) {
    double d = 0.0;
    for (int i = 1; i < 4; ++i) {
        for (int k = 0; k < 3; ++k) {
            d = std::max(d, std::abs(v[i][k] - v[0][k]));
        }
    }
    return d;
}

Point blend(const Point& base, const Point& towards, double t) {
    Point p;
    for (int k = 0; k < 3; ++k) {
        p[k] = base[k] + t * (towards[k] - base[k]);
    }
    return p;
}

// Nelder-Mead on -fidelity. Returns true when the simplex collapsed below
// cfg.tol before the iteration cap.
bool nelder_mead(const Unitary2& u_tar, const XErrorModel& e, const Point& start,
                 const SearchConfig& cfg, std::uint64_t jitter_stream,
                 BestTracker& best) {
    const auto eval = [&](const Point& p) {
        const double f = fidelity_of_knobs(u_tar, {p[0], p[1], p[2]}, e);
        best.offer(p, f);
        return -f;
    };

    std::array<Point, 4> v;
    std::array<double, 4> g{};
    const Point steps = {0.3, 0.6, 0.6};
    v[0] = start;
    for (int k = 0; k < 3; ++k) {
        const double u = counter_uniform(cfg.rng_seed, jitter_stream, k);
        v[k + 1] = start;
        v[k + 1][k] += steps[k] * (1.0 + 0.05 * (u - 0.5));
    }
    for (int i = 0; i < 4; ++i) {
        g[i] = eval(v[i]);
    }

    const auto order = [&] {
        for (int i = 1; i < 4; ++i) {
            for (int j = i; j > 0 && g[j] < g[j - 1]; --j) {
                std::swap(g[j], g[j - 1]);
                std::swap(v[j], v[j - 1]);
            }
        }
    };

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        order();
        if (simplex_diameter(v) < cfg.tol) {
            return true;
        }
        Point centroid{};
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < 3; ++k) {
                centroid[k] += v[i][k] / 3.0;
            }
        }

        const Point xr = blend(centroid, v[3], -1.0); // reflect the worst vertex
        const double gr = eval(xr);
        if (gr < g[0]) {
            const Point xe = blend(centroid, xr, 2.0);
            const double ge = eval(xe);
            v[3] = ge < gr ? xe : xr;
            g[3] = std::min(ge, gr);
        } else if (gr < g[2]) {
            v[3] = xr;
            g[3] = gr;
        } else {
            const bool outside = gr < g[3];
            const Point xc = outside ? blend(centroid, xr, 0.5) : blend(centroid, v[3], 0.5);
            const double gc = eval(xc);
            if (gc < (outside ? gr : g[3])) {
                v[3] = xc;
                g[3] = gc;
            } else {
                for (int i = 1; i < 4; ++i) { // shrink towards the best vertex
                    v[i] = blend(v[0], v[i], 0.5);
                    g[i] = eval(v[i]);
                }
            }
        }
    }
    order();
    return simplex_diameter(v) < cfg.tol;
}

MitigationResult make_result(const GateParams& target, const XErrorModel& e,
                             const Point& raw, MitigationMethod method,
                             bool converged) {
    MitigationResult r;
    r.raw_theta = raw[0];
    r.raw_phi = raw[1];
    r.raw_lambda = raw[2];
    r.implemented = canonicalize_params(raw[0], raw[1], raw[2]);
    r.achieved_fidelity = fidelity_of_knobs(mat_from_params(target),
                                            {raw[0], raw[1], raw[2]}, e);
    r.coverable = is_coverable(target, e);
    r.method = method;
    r.converged = converged;
    return r;
}

} // namespace

MitigationResult mitigate_closed_form(const GateParams& target, const XErrorModel& e) {
    validate_target(target);
    const XErrorModel ec = canonicalize_error(e);
    const double sx = std::sin(ec.theta_x);
    if (std::abs(sx) < 1e-12) {
        return mitigate_numeric(target, ec);
    }

    const double s = std::sin(target.theta / 2.0);
    const double a0 = (s * s) / (sx * sx);
    const double ap = ec.a_plus();

    // half-angle of the theta knob relative to a_plus: a0 when reachable,
    // otherwise the a = 1 boundary
    const double x0 = a0 <= 1.0 ? std::asin(std::min(1.0, std::sqrt(a0))) : kPi / 2.0;

    // roots of the sin² equation in the widened domain [-pi, 3pi], nearest
    // to the target theta, ties toward the smaller knob
    double theta_imp = target.theta;
    double best_dist = -1.0;
    for (int k = -2; k <= 2; ++k) {
        for (const double sign : {1.0, -1.0}) {
            const double cand = ap + sign * 2.0 * x0 + kTwoPi * k;
            if (cand < -kPi - 1e-9 || cand > 3.0 * kPi + 1e-9) {
                continue;
            }
            const double dist = std::abs(cand - target.theta);
            if (best_dist < 0.0 || dist < best_dist - 1e-12 ||
                (std::abs(dist - best_dist) <= 1e-12 && cand < theta_imp)) {
                best_dist = dist;
                theta_imp = cand;
            }
        }
    }

    double phi_imp = target.phi - ec.phi_x;
    double lambda_imp = target.lambda - ec.lambda_x;
    const CasePhases g = closed_form_phases(theta_imp, ec);
    if (g.off_diagonal_defined) {
        const double shift = g.gamma4 - kPi / 2.0 - g.gamma3;
        phi_imp -= shift;
        lambda_imp -= shift;
    }
    // else: the implemented gate is diagonal and only the phase sum matters;
    // phi_imp + lambda_imp + a_plus already reproduces it

    return make_result(target, ec, {theta_imp, phi_imp, lambda_imp},
                       MitigationMethod::ClosedForm, true);
}

MitigationResult mitigate_numeric(const GateParams& target, const XErrorModel& e,
                                  const SearchConfig& cfg) {
    validate_target(target);
    validate_config(cfg);
    const XErrorModel ec = canonicalize_error(e);
    const Unitary2 u_tar = mat_from_params(target);

    BestTracker best;
    // unmitigated candidate: never do worse than the original fidelity
    const Point identity_knobs = {target.theta, target.phi, target.lambda};
    best.offer(identity_knobs, fidelity_of_knobs(u_tar, target, ec));

    const int n = cfg.grid_per_axis;
    std::vector<std::pair<double, Point>> grid;
    grid.reserve(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const Point p = {(i + 0.5) * kPi / n, (j + 0.5) * kTwoPi / n,
                                 (k + 0.5) * kTwoPi / n};
                const double f = fidelity_of_knobs(u_tar, {p[0], p[1], p[2]}, ec);
                best.offer(p, f);
                grid.emplace_back(f, p);
            }
        }
    }
    const int starts = std::min<int>(cfg.restarts, static_cast<int>(grid.size()));
    std::partial_sort(grid.begin(), grid.begin() + starts, grid.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });

    bool winner_converged = false;
    double winner_f = -1.0;
    const auto refine = [&](const Point& start, std::uint64_t stream) {
        BestTracker local;
        const bool conv = nelder_mead(u_tar, ec, start, cfg, stream, local);
        best.offer(local.x, local.f);
        if (local.f > winner_f) {
            winner_f = local.f;
            winner_converged = conv;
        }
    };
    refine(identity_knobs, 0);
    for (int r = 0; r < starts; ++r) {
        refine(grid[r].second, r + 1);
    }

    return make_result(target, ec, best.x, MitigationMethod::NumericSearch,
                       winner_converged);
}

} // namespace zxzxz
