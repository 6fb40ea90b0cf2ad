#include "zxzxz/fidelity.hpp"
#include "zxzxz/mitigation.hpp"
#include "zxzxz/sweep.hpp"
#include "zxzxz/universality.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace zxzxz;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitCheck = 3;

struct AngleOpt {
    std::string text;
    bool given() const { return !text.empty(); }
    double value(const std::string& field) const { return parse_angle(text, field); }
};

void add_angle(CLI::App* cmd, AngleOpt& opt, const std::string& flag,
               const std::string& help, bool required = false) {
    auto* o = cmd->add_option(flag, opt.text, help + " (radians, or pi:<mult>)");
    if (required) {
        o->required();
    }
}

struct TargetOpts {
    AngleOpt theta, phi, lambda;

    GateParams canonical() const {
        return canonicalize_params(theta.value("theta"), phi.value("phi"),
                                   lambda.value("lambda"));
    }
};

struct ErrorOpts {
    AngleOpt theta_x, phi_x, lambda_x, delta;

    XErrorModel model() const {
        XErrorModel e;
        if (delta.given() && theta_x.given()) {
            throw ConfigError("theta-x: give either --theta-x or --delta, not both");
        }
        if (delta.given()) {
            e.theta_x = kPi / 2.0 + this->delta.value("delta");
        } else if (theta_x.given()) {
            e.theta_x = theta_x.value("theta-x");
        }
        if (phi_x.given()) {
            e.phi_x = phi_x.value("phi-x");
        }
        if (lambda_x.given()) {
            e.lambda_x = lambda_x.value("lambda-x");
        }
        return e;
    }
};

void add_target(CLI::App* cmd, TargetOpts& t) {
    add_angle(cmd, t.theta, "--theta", "target theta", true);
    add_angle(cmd, t.phi, "--phi", "target phi", true);
    add_angle(cmd, t.lambda, "--lambda", "target lambda", true);
}

void add_error(CLI::App* cmd, ErrorOpts& e) {
    add_angle(cmd, e.theta_x, "--theta-x", "theta of the physical X pulse");
    add_angle(cmd, e.delta, "--delta", "over-rotation of the X pulse");
    add_angle(cmd, e.phi_x, "--phi-x", "phi of the physical X pulse");
    add_angle(cmd, e.lambda_x, "--lambda-x", "lambda of the physical X pulse");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_entry(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%+.9f%+.9fi", z.real(), z.imag());
    return buf;
}

void print_matrix(const Unitary2& u) {
    std::cout << "  [ " << fmt_entry(u.u11()) << "  " << fmt_entry(u.u12()) << " ]\n";
    std::cout << "  [ " << fmt_entry(u.u21()) << "  " << fmt_entry(u.u22()) << " ]\n";
}

int run_decompose(const TargetOpts& t, const ErrorOpts& eo, bool with_error) {
    const GateParams p = t.canonical();
    std::cout << "target (canonical): theta=" << fmt(p.theta) << " phi=" << fmt(p.phi)
              << " lambda=" << fmt(p.lambda) << "\n";
    std::cout << "sequence: Z(" << fmt(p.phi - kPi / 2.0) << ") X(pi/2) Z("
              << fmt(kPi - p.theta) << ") X(pi/2) Z(" << fmt(p.lambda - kPi / 2.0)
              << ")\n";
    std::cout << "gate matrix:\n";
    print_matrix(mat_from_params(p));
    if (!with_error) {
        return kExitOk;
    }
    const XErrorModel e = eo.model();
    const CaseKind kind = classify_case(e);
    std::cout << "error case: " << to_string(kind) << " (delta=" << fmt(e.delta())
              << ")\n";
    std::cout << "erroneous matrix:\n";
    print_matrix(erroneous_decomposition(p, e));
    if (kind != CaseKind::Ideal) {
        const EffectiveParams eff = kind == CaseKind::Case2
                                        ? effective_params_case2(p, e)
                                        : effective_params_case3(p, e);
        std::cout << "effective params: theta=" << fmt(eff.params.theta)
                  << " phi=" << fmt(eff.params.phi)
                  << " lambda=" << fmt(eff.params.lambda)
                  << " global_phase=" << fmt(eff.global_phase) << "\n";
    }
    return kExitOk;
}

int run_fidelity(const TargetOpts& t, const ErrorOpts& eo) {
    const GateParams p = t.canonical();
    const XErrorModel e = eo.model();
    const FidelityReport r = fidelity_report(p, e);
    const double numeric =
        process_fidelity(mat_from_params(p), erroneous_decomposition(p, e));
    std::cout << "case:            " << to_string(r.kind) << "\n";
    std::cout << "f_ori analytic:  " << fmt(r.f_original) << "\n";
    std::cout << "f_ori numeric:   " << fmt(numeric) << "\n";
    std::cout << "f_best analytic: " << fmt(r.f_best) << "\n";
    std::cout << "coverable:       " << (r.coverable ? "yes" : "no") << "\n";
    return kExitOk;
}

int run_mitigate(const TargetOpts& t, const ErrorOpts& eo, bool numeric,
                 const SearchConfig& cfg) {
    const GateParams p = t.canonical();
    const XErrorModel e = eo.model();
    const MitigationResult r =
        numeric ? mitigate_numeric(p, e, cfg) : mitigate_closed_form(p, e);
    std::cout << "method:     "
              << (r.method == MitigationMethod::ClosedForm ? "closed-form"
                                                           : "numeric-search")
              << "\n";
    std::cout << "implemented knobs: theta=" << fmt(r.raw_theta)
              << " phi=" << fmt(r.raw_phi) << " lambda=" << fmt(r.raw_lambda) << "\n";
    std::cout << "implemented (canonical): theta=" << fmt(r.implemented.theta)
              << " phi=" << fmt(r.implemented.phi)
              << " lambda=" << fmt(r.implemented.lambda) << "\n";
    std::cout << "achieved fidelity: " << fmt(r.achieved_fidelity) << "\n";
    std::cout << "coverable:         " << (r.coverable ? "yes" : "no") << "\n";
    if (!r.converged) {
        std::cout << "warning: search did not converge within max_iters\n";
    }
    return kExitOk;
}

int run_universality(const ErrorOpts& eo, long long samples, std::uint64_t seed) {
    const XErrorModel e = eo.model();
    const UniversalityReport r = universality_monte_carlo(e, samples, seed);
    std::cout << "case:        " << to_string(classify_case(e)) << "\n";
    std::cout << "un analytic: " << fmt(r.un_analytic) << "\n";
    std::cout << "un mc:       " << fmt(r.un_monte_carlo) << " +/- " << fmt(r.mc_stderr)
              << " (" << r.mc_samples << " samples)\n";
    std::cout << "delta_theta: " << fmt(r.delta_theta) << "\n";
    return kExitOk;
}

struct SweepCli {
    std::string config_path;
    std::string mode;
    std::string target;
    std::string path;
    AngleOpt theta_x, phi_x, lambda_x, phi_x_alt, lambda_x_alt;
    std::string axis;
    AngleOpt start, stop;
    int steps = -1;
    std::string outputs;
    std::optional<std::uint64_t> seed;
    std::optional<long long> mc_samples;
    std::optional<int> quadrature_points;
    std::string out;
    std::string format = "csv";
    bool check = false;
};

SweepConfig build_sweep_config(const SweepCli& cli) {
    // flag overrides are applied by rewriting them as config lines on top of
    // the file contents, so both paths share one parser/validator
    std::string text;
    if (!cli.config_path.empty()) {
        std::ifstream in(cli.config_path);
        if (!in) {
            throw ConfigError("config: cannot open '" + cli.config_path + "'");
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
        text += "\n";
    }
    const auto append = [&text](const std::string& key, const std::string& value) {
        if (!value.empty()) {
            text += key + " = " + value + "\n";
        }
    };
    append("mode", cli.mode);
    append("target", cli.target);
    append("path", cli.path);
    append("theta_x", cli.theta_x.text);
    append("phi_x", cli.phi_x.text);
    append("lambda_x", cli.lambda_x.text);
    append("phi_x_alt", cli.phi_x_alt.text);
    append("lambda_x_alt", cli.lambda_x_alt.text);
    append("axis", cli.axis);
    append("start", cli.start.text);
    append("stop", cli.stop.text);
    if (cli.steps > 0) {
        append("steps", std::to_string(cli.steps));
    }
    append("outputs", cli.outputs);
    if (cli.seed) {
        append("seed", std::to_string(*cli.seed));
    }
    if (cli.mc_samples) {
        append("mc_samples", std::to_string(*cli.mc_samples));
    }
    if (cli.quadrature_points) {
        append("quadrature_points", std::to_string(*cli.quadrature_points));
    }
    std::istringstream iss(text);
    return parse_sweep_config(iss);
}

std::string resolve_output_path(const std::string& out) {
    if (out.empty() || out.front() == '/') {
        return out;
    }
    const char* dir = std::getenv("ZXZXZ_OUT_DIR");
    if (dir == nullptr || *dir == '\0') {
        return out;
    }
    std::string d(dir);
    if (d.back() != '/') {
        d += '/';
    }
    return d + out;
}

int run_sweep_cmd(const SweepCli& cli) {
    if (cli.format != "csv" && cli.format != "json") {
        throw ConfigError("format: expected 'csv' or 'json'");
    }
    const SweepConfig cfg = build_sweep_config(cli);
    const SweepTable table = run_sweep(cfg);

    const EmitFormat format = cli.format == "json" ? EmitFormat::Json : EmitFormat::Csv;
    if (cli.out.empty()) {
        emit(table, format, std::cout);
        if (!std::cout) {
            std::cerr << "error: writing to standard output failed\n";
            return kExitIo;
        }
    } else {
        const std::string path = resolve_output_path(cli.out);
        std::ofstream os(path);
        if (!os) {
            std::cerr << "error: cannot open '" << path << "' for writing\n";
            return kExitIo;
        }
        emit(table, format, os);
        os.flush();
        if (!os) {
            std::cerr << "error: writing '" << path << "' failed\n";
            return kExitIo;
        }
        std::cerr << "wrote " << table.rows.size() << " rows to " << path << "\n";
    }

    if (cli.check) {
        const CheckReport report = check_table(cfg, table);
        if (!report.ok) {
            std::cerr << "check failed: " << report.detail << "\n";
            return kExitCheck;
        }
        std::cerr << "check passed\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent-error analysis of the ZXZXZ single-qubit decomposition"};
    app.require_subcommand(1);

    TargetOpts target;
    ErrorOpts error;
    auto* decompose = app.add_subcommand("decompose", "five-gate sequence and matrices");
    add_target(decompose, target);
    add_error(decompose, error);

    TargetOpts f_target;
    ErrorOpts f_error;
    auto* fidelity = app.add_subcommand("fidelity", "original/best fidelity of a target");
    add_target(fidelity, f_target);
    add_error(fidelity, f_error);

    TargetOpts m_target;
    ErrorOpts m_error;
    bool m_numeric = false;
    SearchConfig m_cfg;
    auto* mitigate = app.add_subcommand("mitigate", "retuned knobs maximizing fidelity");
    add_target(mitigate, m_target);
    add_error(mitigate, m_error);
    mitigate->add_flag("--numeric", m_numeric, "use the derivative-free search");
    mitigate->add_option("--grid", m_cfg.grid_per_axis, "grid points per axis");
    mitigate->add_option("--tol", m_cfg.tol, "simplex diameter tolerance");
    mitigate->add_option("--max-iters", m_cfg.max_iters, "iteration cap per restart");
    mitigate->add_option("--restarts", m_cfg.restarts, "local searches from grid maxima");
    mitigate->add_option("--seed", m_cfg.rng_seed, "search seed");

    ErrorOpts u_error;
    long long u_samples = 100000;
    std::uint64_t u_seed = 1;
    auto* universality = app.add_subcommand("universality", "covered fraction of the box");
    add_error(universality, u_error);
    universality->add_option("--samples", u_samples, "Monte Carlo samples");
    universality->add_option("--seed", u_seed, "Monte Carlo seed");

    SweepCli sweep_cli;
    auto* sweep = app.add_subcommand("sweep", "grid sweeps with CSV/JSON output");
    sweep->add_option("--config", sweep_cli.config_path, "key-value recipe file");
    sweep->add_option("--mode", sweep_cli.mode, "sweep mode");
    sweep->add_option("--target", sweep_cli.target, "fixed target 'th ph la'");
    sweep->add_option("--path", sweep_cli.path, "path coefficients 'ct cp cl'");
    add_angle(sweep, sweep_cli.theta_x, "--theta-x", "base theta_x");
    add_angle(sweep, sweep_cli.phi_x, "--phi-x", "base phi_x");
    add_angle(sweep, sweep_cli.lambda_x, "--lambda-x", "base lambda_x");
    add_angle(sweep, sweep_cli.phi_x_alt, "--phi-x-alt", "comparison phi_x");
    add_angle(sweep, sweep_cli.lambda_x_alt, "--lambda-x-alt", "comparison lambda_x");
    sweep->add_option("--axis", sweep_cli.axis, "sweep axis name");
    add_angle(sweep, sweep_cli.start, "--start", "axis start");
    add_angle(sweep, sweep_cli.stop, "--stop", "axis stop");
    sweep->add_option("--steps", sweep_cli.steps, "grid points");
    sweep->add_option("--outputs", sweep_cli.outputs, "space-separated column names");
    sweep->add_option("--seed", sweep_cli.seed, "sweep seed");
    sweep->add_option("--mc-samples", sweep_cli.mc_samples, "Monte Carlo samples per row");
    sweep->add_option("--quadrature-points", sweep_cli.quadrature_points,
                      "quadrature points per row");
    sweep->add_option("--out", sweep_cli.out,
                      "output file (relative paths honor ZXZXZ_OUT_DIR)");
    sweep->add_option("--format", sweep_cli.format, "csv or json");
    sweep->add_flag("--check", sweep_cli.check,
                    "verify analytic/numeric column agreement, exit 3 on violation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (decompose->parsed()) {
            const bool with_error = !error.theta_x.text.empty() ||
                                    !error.delta.text.empty() ||
                                    !error.phi_x.text.empty() ||
                                    !error.lambda_x.text.empty();
            return run_decompose(target, error, with_error);
        }
        if (fidelity->parsed()) {
            return run_fidelity(f_target, f_error);
        }
        if (mitigate->parsed()) {
            return run_mitigate(m_target, m_error, m_numeric, m_cfg);
        }
        if (universality->parsed()) {
            return run_universality(u_error, u_samples, u_seed);
        }
        if (sweep->parsed()) {
            return run_sweep_cmd(sweep_cli);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
