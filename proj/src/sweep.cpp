#include "zxzxz/sweep.hpp"

#include "zxzxz/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace zxzxz {

namespace {

const std::vector<std::string>& allowed_columns(SweepMode mode) {
    static const std::vector<std::string> fidelity_delta = {
        "f_ori_analytic",     "f_ori_numeric",     "f_best_analytic",
        "f_best_numeric",     "f_ori_analytic_alt", "f_ori_numeric_alt",
        "f_best_analytic_alt", "f_best_numeric_alt"};
    static const std::vector<std::string> fidelity_x = {
        "f_ori_analytic", "f_ori_numeric", "f_best_analytic", "f_best_numeric"};
    static const std::vector<std::string> universality = {
        "un_analytic", "un_monte_carlo", "mc_stderr", "delta_theta"};
    static const std::vector<std::string> averages = {
        "f_ori_ave", "f_ori_ave_quadrature", "f_best_ave_analytic",
        "f_best_ave_quadrature"};
    switch (mode) {
    case SweepMode::FidelityVsDelta: return fidelity_delta;
    case SweepMode::FidelityVsX: return fidelity_x;
    case SweepMode::UniversalityVsDelta: return universality;
    case SweepMode::AverageFidelityVsDelta: return averages;
    }
    return fidelity_x;
}

bool is_alt_column(const std::string& name) {
    return name.size() > 4 && name.compare(name.size() - 4, 4, "_alt") == 0;
}

void validate_config(const SweepConfig& cfg) {
    if (cfg.axis.steps < 2) {
        throw ConfigError("steps: must be >= 2");
    }
    if (!(cfg.axis.start < cfg.axis.stop)) {
        throw ConfigError("start: must be smaller than stop");
    }
    const char* expected_axis =
        cfg.mode == SweepMode::FidelityVsX ? "x" : "delta";
    if (cfg.axis.name != expected_axis) {
        throw ConfigError("axis: mode " + std::string(to_string(cfg.mode)) +
                          " sweeps '" + expected_axis + "', got '" + cfg.axis.name + "'");
    }
    if (cfg.outputs.empty()) {
        throw ConfigError("outputs: at least one column required");
    }
    const auto& allowed = allowed_columns(cfg.mode);
    for (const auto& name : cfg.outputs) {
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
            throw ConfigError("outputs: unknown column '" + name + "' for mode " +
                              to_string(cfg.mode));
        }
        if (is_alt_column(name) && !cfg.alt_phi_lambda) {
            throw ConfigError("outputs: column '" + name +
                              "' needs phi_x_alt/lambda_x_alt");
        }
    }
    if (cfg.mode == SweepMode::UniversalityVsDelta && cfg.mc_samples < 1) {
        throw ConfigError("mc_samples: must be >= 1");
    }
    if (cfg.mode == SweepMode::AverageFidelityVsDelta && cfg.quadrature_points < 64) {
        throw ConfigError("quadrature_points: must be >= 64");
    }
}

struct RowScratch {
    bool have_mc = false;
    UniversalityReport mc;
};

double eval_column(const SweepConfig& cfg, const std::string& name, double value,
                   int row, RowScratch& scratch) {
    const bool alt = is_alt_column(name);
    const std::string base = alt ? name.substr(0, name.size() - 4) : name;

    XErrorModel e = cfg.error_base;
    if (cfg.mode != SweepMode::FidelityVsX) {
        e.theta_x = kPi / 2.0 + value;
    }
    if (alt) {
        e.phi_x = cfg.alt_phi_lambda->first;
        e.lambda_x = cfg.alt_phi_lambda->second;
    }

    if (cfg.mode == SweepMode::UniversalityVsDelta) {
        if (base == "un_analytic") {
            return universality_analytic(e);
        }
        if (base == "delta_theta") {
            const CaseKind kind = classify_case(e);
            return (kind == CaseKind::Case1 || kind == CaseKind::Case3)
                       ? 2.0 * std::abs(canonicalize_error(e).delta())
                       : 0.0;
        }
        if (!scratch.have_mc) {
            scratch.mc = universality_monte_carlo(
                e, cfg.mc_samples, counter_hash(cfg.seed, static_cast<std::uint64_t>(row), 11));
            scratch.have_mc = true;
        }
        return base == "un_monte_carlo" ? scratch.mc.un_monte_carlo : scratch.mc.mc_stderr;
    }

    if (cfg.mode == SweepMode::AverageFidelityVsDelta) {
        if (base == "f_ori_ave") {
            return average_original_fidelity(e, cfg.quadrature_points);
        }
        if (base == "f_ori_ave_quadrature") {
            return average_original_fidelity_quadrature(e, cfg.quadrature_points);
        }
        if (base == "f_best_ave_analytic") {
            return average_best_fidelity(e);
        }
        return average_best_fidelity_quadrature(e, cfg.quadrature_points);
    }

    const GateParams raw =
        cfg.mode == SweepMode::FidelityVsX ? cfg.target.at(value) : cfg.target.fixed;
    const GateParams target = canonicalize_params(raw.theta, raw.phi, raw.lambda);

    if (base == "f_ori_analytic") {
        return original_fidelity_analytic(target, e);
    }
    if (base == "f_ori_numeric") {
        return process_fidelity(mat_from_params(target), erroneous_decomposition(target, e));
    }
    if (base == "f_best_analytic") {
        return best_fidelity_analytic(target, e);
    }
    SearchConfig search = cfg.search;
    search.rng_seed = counter_hash(cfg.seed, static_cast<std::uint64_t>(row), alt ? 8 : 7);
    return mitigate_numeric(target, e, search).achieved_fidelity;
}

SweepTable run_sweep_impl(const SweepConfig& cfg, bool parallel) {
    validate_config(cfg);

    SweepTable table;
    table.columns.push_back(cfg.axis.name);
    for (const auto& name : cfg.outputs) {
        table.columns.push_back(name);
    }
    const int n = cfg.axis.steps;
    table.rows.assign(static_cast<std::size_t>(n), {});

    const auto fill_row = [&](int i) {
        const double value =
            cfg.axis.start + (cfg.axis.stop - cfg.axis.start) * i / (n - 1);
        RowScratch scratch;
        std::vector<double>& row = table.rows[static_cast<std::size_t>(i)];
        row.reserve(cfg.outputs.size() + 1);
        row.push_back(value);
        for (const auto& name : cfg.outputs) {
            row.push_back(eval_column(cfg, name, value, i, scratch));
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            fill_row(i);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            fill_row(i);
        }
    }
    return table;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

GateParams TargetSpec::at(double x) const {
    if (!parametric) {
        return fixed;
    }
    return {coeff_theta * kPi * x, coeff_phi * kPi * x, coeff_lambda * kPi * x};
}

SweepTable run_sweep(const SweepConfig& cfg) { return run_sweep_impl(cfg, true); }

namespace reference {
SweepTable run_sweep_serial(const SweepConfig& cfg) { return run_sweep_impl(cfg, false); }
} // namespace reference

void emit(const SweepTable& table, EmitFormat format, std::ostream& os) {
    if (format == EmitFormat::Csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            os << (c ? "," : "") << table.columns[c];
        }
        os << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                os << (c ? "," : "") << format_double(row[c]);
            }
            os << "\n";
        }
        return;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < table.columns.size() && c < row.size(); ++c) {
            obj[table.columns[c]] = row[c];
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << "\n";
}

SweepTable parse_table_json(std::istream& is) {
    nlohmann::ordered_json arr;
    is >> arr;
    SweepTable table;
    if (!arr.is_array()) {
        throw ConfigError("json: expected an array of row objects");
    }
    for (const auto& obj : arr) {
        if (table.columns.empty()) {
            for (auto it = obj.begin(); it != obj.end(); ++it) {
                table.columns.push_back(it.key());
            }
        }
        std::vector<double> row;
        row.reserve(table.columns.size());
        for (const auto& name : table.columns) {
            row.push_back(obj.at(name).get<double>());
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

double parse_angle(const std::string& text, const std::string& field) {
    std::string body = text;
    double scale = 1.0;
    if (body.rfind("pi:", 0) == 0) {
        body = body.substr(3);
        scale = kPi;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(body, &used);
        if (used != body.size()) {
            throw std::invalid_argument(body);
        }
        return v * scale;
    } catch (const std::exception&) {
        throw ConfigError(field + ": bad angle '" + text + "'");
    }
}

SweepMode parse_mode(const std::string& text) {
    if (text == "fidelity_vs_delta") return SweepMode::FidelityVsDelta;
    if (text == "fidelity_vs_x") return SweepMode::FidelityVsX;
    if (text == "universality_vs_delta") return SweepMode::UniversalityVsDelta;
    if (text == "average_fidelity_vs_delta") return SweepMode::AverageFidelityVsDelta;
    throw ConfigError("mode: unknown mode '" + text + "'");
}

const char* to_string(SweepMode mode) {
    switch (mode) {
    case SweepMode::FidelityVsDelta: return "fidelity_vs_delta";
    case SweepMode::FidelityVsX: return "fidelity_vs_x";
    case SweepMode::UniversalityVsDelta: return "universality_vs_delta";
    case SweepMode::AverageFidelityVsDelta: return "average_fidelity_vs_delta";
    }
    return "?";
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) {
        out.push_back(tok);
    }
    return out;
}

long long parse_integer(const std::string& text, const std::string& field) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": bad integer '" + text + "'");
    }
}

} // namespace

SweepConfig parse_sweep_config(std::istream& is) {
    SweepConfig cfg;
    bool have_mode = false;
    bool have_target = false;
    bool have_path = false;
    bool have_axis_name = false;
    double alt_phi = 0.0;
    double alt_lambda = 0.0;
    bool have_alt_phi = false;
    bool have_alt_lambda = false;

    std::string line;
    while (std::getline(is, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (eq == std::string::npos) {
            throw ConfigError("config: expected 'key = value', got '" + line + "'");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) {
            throw ConfigError(key + ": empty value");
        }

        if (key == "mode") {
            cfg.mode = parse_mode(value);
            have_mode = true;
        } else if (key == "target") {
            const auto parts = split_ws(value);
            if (parts.size() != 3) {
                throw ConfigError("target: expected three angles");
            }
            cfg.target.parametric = false;
            cfg.target.fixed = {parse_angle(parts[0], "target"),
                                parse_angle(parts[1], "target"),
                                parse_angle(parts[2], "target")};
            have_target = true;
        } else if (key == "path") {
            const auto parts = split_ws(value);
            if (parts.size() != 3) {
                throw ConfigError("path: expected three coefficients");
            }
            cfg.target.parametric = true;
            cfg.target.coeff_theta = parse_angle(parts[0], "path");
            cfg.target.coeff_phi = parse_angle(parts[1], "path");
            cfg.target.coeff_lambda = parse_angle(parts[2], "path");
            have_path = true;
        } else if (key == "theta_x") {
            cfg.error_base.theta_x = parse_angle(value, key);
        } else if (key == "phi_x") {
            cfg.error_base.phi_x = parse_angle(value, key);
        } else if (key == "lambda_x") {
            cfg.error_base.lambda_x = parse_angle(value, key);
        } else if (key == "phi_x_alt") {
            alt_phi = parse_angle(value, key);
            have_alt_phi = true;
        } else if (key == "lambda_x_alt") {
            alt_lambda = parse_angle(value, key);
            have_alt_lambda = true;
        } else if (key == "axis") {
            cfg.axis.name = value;
            have_axis_name = true;
        } else if (key == "start") {
            cfg.axis.start = parse_angle(value, key);
        } else if (key == "stop") {
            cfg.axis.stop = parse_angle(value, key);
        } else if (key == "steps") {
            cfg.axis.steps = static_cast<int>(parse_integer(value, key));
        } else if (key == "outputs") {
            cfg.outputs = split_ws(value);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_integer(value, key));
        } else if (key == "mc_samples") {
            cfg.mc_samples = parse_integer(value, key);
        } else if (key == "quadrature_points") {
            cfg.quadrature_points = static_cast<int>(parse_integer(value, key));
        } else if (key == "search_grid") {
            cfg.search.grid_per_axis = static_cast<int>(parse_integer(value, key));
        } else if (key == "search_tol") {
            cfg.search.tol = parse_angle(value, key);
        } else if (key == "search_max_iters") {
            cfg.search.max_iters = static_cast<int>(parse_integer(value, key));
        } else if (key == "search_restarts") {
            cfg.search.restarts = static_cast<int>(parse_integer(value, key));
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    if (!have_mode) {
        throw ConfigError("mode: missing");
    }
    if (cfg.mode == SweepMode::FidelityVsX && !have_path) {
        throw ConfigError("path: required for mode fidelity_vs_x");
    }
    if (cfg.mode == SweepMode::FidelityVsDelta && !have_target) {
        throw ConfigError("target: required for mode fidelity_vs_delta");
    }
    if (have_alt_phi != have_alt_lambda) {
        throw ConfigError("phi_x_alt: phi_x_alt and lambda_x_alt must come together");
    }
    if (have_alt_phi) {
        cfg.alt_phi_lambda = {alt_phi, alt_lambda};
    }
    if (!have_axis_name) {
        cfg.axis.name = cfg.mode == SweepMode::FidelityVsX ? "x" : "delta";
    }
    if (cfg.outputs.empty()) {
        for (const auto& name : allowed_columns(cfg.mode)) {
            if (!is_alt_column(name) || cfg.alt_phi_lambda) {
                cfg.outputs.push_back(name);
            }
        }
    }
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    return parse_sweep_config(in);
}

CheckReport check_table(const SweepConfig& cfg, const SweepTable& table) {
    const auto col_index = [&](const std::string& name) -> int {
        const auto it = std::find(table.columns.begin(), table.columns.end(), name);
        return it == table.columns.end()
                   ? -1
                   : static_cast<int>(it - table.columns.begin());
    };
    struct Pair {
        const char* a;
        const char* b;
        double tol;
    };
    static const Pair pairs[] = {
        {"f_ori_analytic", "f_ori_numeric", 1e-9},
        {"f_ori_analytic_alt", "f_ori_numeric_alt", 1e-9},
        {"f_best_analytic", "f_best_numeric", 1e-6},
        {"f_best_analytic_alt", "f_best_numeric_alt", 1e-6},
        {"f_ori_ave", "f_ori_ave_quadrature", 1e-8},
        {"f_best_ave_analytic", "f_best_ave_quadrature", 1e-8},
    };

    CheckReport report;
    for (const auto& pr : pairs) {
        const int ia = col_index(pr.a);
        const int ib = col_index(pr.b);
        if (ia < 0 || ib < 0) {
            continue;
        }
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const double diff = std::abs(table.rows[r][static_cast<std::size_t>(ia)] -
                                         table.rows[r][static_cast<std::size_t>(ib)]);
            if (!(diff < pr.tol)) {
                report.ok = false;
                report.detail = std::string(pr.a) + " vs " + pr.b + " differs by " +
                                format_double(diff) + " at row " + std::to_string(r);
                return report;
            }
        }
    }

    const int iu = col_index("un_analytic");
    const int im = col_index("un_monte_carlo");
    const int ise = col_index("mc_stderr");
    if (iu >= 0 && im >= 0 && ise >= 0) {
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const double diff = std::abs(table.rows[r][static_cast<std::size_t>(iu)] -
                                         table.rows[r][static_cast<std::size_t>(im)]);
            if (!(diff <= 4.0 * table.rows[r][static_cast<std::size_t>(ise)])) {
                report.ok = false;
                report.detail = "un_monte_carlo outside 4 standard errors at row " +
                                std::to_string(r);
                return report;
            }
        }
    }
    (void)cfg;
    return report;
}

} // namespace zxzxz
