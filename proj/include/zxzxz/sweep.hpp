#pragma once

#include "zxzxz/fidelity.hpp"
#include "zxzxz/mitigation.hpp"
#include "zxzxz/universality.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zxzxz {

/// Configuration or input problem; the message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepMode {
    FidelityVsDelta,     // fixed target, theta_x = pi/2 + delta sweeps
    FidelityVsX,         // parametric target path over x, fixed error model
    UniversalityVsDelta, // analytic + Monte Carlo coverage vs delta
    AverageFidelityVsDelta,
};

/// Target of a sweep: either a fixed triple or the linear path
/// theta = ct*pi*x, phi = cp*pi*x, lambda = cl*pi*x.
struct TargetSpec {
    bool parametric = false;
    GateParams fixed{};
    double coeff_theta = 1.0;
    double coeff_phi = 2.0;
    double coeff_lambda = 2.0;

    GateParams at(double x) const;
};

struct SweepAxis {
    std::string name = "delta";
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;
};

struct SweepConfig {
    SweepMode mode = SweepMode::FidelityVsDelta;
    TargetSpec target;
    XErrorModel error_base;
    /// Optional comparison error model sharing theta_x with error_base;
    /// enables the *_alt output columns.
    std::optional<std::pair<double, double>> alt_phi_lambda;
    SweepAxis axis;
    std::vector<std::string> outputs;
    std::uint64_t seed = 1;
    long long mc_samples = 100000;
    int quadrature_points = 100000;
    SearchConfig search;
};

struct SweepTable {
    std::vector<std::string> columns; // axis name first
    std::vector<std::vector<double>> rows;
};

/// Evaluate the configured columns on the axis grid. Rows are computed
/// independently (in parallel when OpenMP is enabled) and stored by grid
/// index, so output is deterministic per seed.
SweepTable run_sweep(const SweepConfig& cfg);

namespace reference {
/// Single-thread baseline, same table bit for bit.
SweepTable run_sweep_serial(const SweepConfig& cfg);
} // namespace reference

enum class EmitFormat { Csv, Json };

/// CSV: header + one line per row, 17 significant digits. JSON: array of
/// row objects keyed by column name.
void emit(const SweepTable& table, EmitFormat format, std::ostream& os);

SweepTable parse_table_json(std::istream& is);

/// Key-value sweep description ("key = value" lines, '#' comments).
SweepConfig parse_sweep_config(std::istream& is);
SweepConfig load_sweep_config(const std::string& path);

/// Enforce the analytic/numeric column-pair bounds: 1e-9 for matrix-backed
/// pairs, 1e-6 for optimizer-backed pairs, 4 standard errors for Monte
/// Carlo universality.
struct CheckReport {
    bool ok = true;
    std::string detail;
};
CheckReport check_table(const SweepConfig& cfg, const SweepTable& table);

/// Angles on the command line and in config files: raw radians or
/// multiples of pi via the "pi:" prefix (e.g. "pi:0.8").
double parse_angle(const std::string& text, const std::string& field);

/// Names of the sweep modes as they appear in config files.
SweepMode parse_mode(const std::string& text);
const char* to_string(SweepMode mode);

} // namespace zxzxz
