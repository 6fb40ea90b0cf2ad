#include "zxzxz/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace zxzxz;

namespace {

SweepConfig small_fidelity_config() {
    SweepConfig cfg;
    cfg.mode = SweepMode::FidelityVsDelta;
    cfg.target.fixed = {0.8 * kPi, 1.1 * kPi, 1.6 * kPi};
    cfg.error_base = {kPi / 2, 0.1 * kPi, 0.09 * kPi};
    cfg.axis = {"delta", -0.5 * kPi, 0.5 * kPi, 11};
    cfg.outputs = {"f_ori_analytic", "f_ori_numeric", "f_best_analytic"};
    cfg.seed = 99;
    return cfg;
}

} // namespace

TEST_CASE("angle parsing") {
    CHECK(parse_angle("pi:0.8", "t") == doctest::Approx(0.8 * kPi).epsilon(1e-15));
    CHECK(parse_angle("pi:-0.5", "t") == doctest::Approx(-0.5 * kPi).epsilon(1e-15));
    CHECK(parse_angle("1.25", "t") == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(parse_angle("0", "t") == 0.0);
    CHECK_THROWS_AS(parse_angle("pi:x", "t"), ConfigError);
    CHECK_THROWS_AS(parse_angle("1.2rad", "t"), ConfigError);
    CHECK_THROWS_AS(parse_angle("", "t"), ConfigError);
}

TEST_CASE("sweep grid and column layout") {
    const SweepConfig cfg = small_fidelity_config();
    const SweepTable t = run_sweep(cfg);
    REQUIRE(t.columns.size() == 4);
    CHECK(t.columns[0] == "delta");
    REQUIRE(t.rows.size() == 11);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        REQUIRE(t.rows[r].size() == 4);
        if (r > 0) {
            CHECK(t.rows[r][0] > t.rows[r - 1][0]); // strictly increasing axis
        }
    }
    CHECK(t.rows.front()[0] == doctest::Approx(-0.5 * kPi));
    CHECK(t.rows.back()[0] == doctest::Approx(0.5 * kPi));
    // analytic and matrix columns agree everywhere
    for (const auto& row : t.rows) {
        CHECK(std::abs(row[1] - row[2]) < 1e-10);
    }
}

TEST_CASE("parallel sweep equals the serial reference") {
    const SweepConfig cfg = small_fidelity_config();
    const SweepTable p = run_sweep(cfg);
    const SweepTable s = reference::run_sweep_serial(cfg);
    CHECK(p.columns == s.columns);
    CHECK(p.rows == s.rows);
}

TEST_CASE("ideal error model gives flat unit fidelity columns") {
    SweepConfig cfg;
    cfg.mode = SweepMode::FidelityVsX;
    cfg.target.parametric = true;
    cfg.target.coeff_theta = 1.0;
    cfg.target.coeff_phi = 2.0;
    cfg.target.coeff_lambda = 2.0;
    cfg.error_base = XErrorModel::ideal();
    cfg.axis = {"x", 0.0, 1.0, 21};
    cfg.outputs = {"f_ori_analytic", "f_ori_numeric", "f_best_analytic"};
    const SweepTable t = run_sweep(cfg);
    for (const auto& row : t.rows) {
        CHECK(row[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(row[2] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(row[3] == 1.0);
    }
}

TEST_CASE("config validation names the offending field") {
    SweepConfig cfg = small_fidelity_config();
    cfg.axis.steps = 1;
    CHECK_THROWS_WITH_AS(run_sweep(cfg), doctest::Contains("steps"), ConfigError);

    cfg = small_fidelity_config();
    cfg.axis.start = 1.0;
    cfg.axis.stop = 0.0;
    CHECK_THROWS_WITH_AS(run_sweep(cfg), doctest::Contains("start"), ConfigError);

    cfg = small_fidelity_config();
    cfg.axis.name = "x";
    CHECK_THROWS_WITH_AS(run_sweep(cfg), doctest::Contains("axis"), ConfigError);

    cfg = small_fidelity_config();
    cfg.outputs = {"no_such_column"};
    CHECK_THROWS_WITH_AS(run_sweep(cfg), doctest::Contains("outputs"), ConfigError);

    cfg = small_fidelity_config();
    cfg.outputs = {"f_best_analytic_alt"}; // alt columns need the alt error pair
    CHECK_THROWS_WITH_AS(run_sweep(cfg), doctest::Contains("outputs"), ConfigError);
}

TEST_CASE("csv layout: header plus one line per row, newline-terminated") {
    SweepTable t;
    t.columns = {"delta", "f"};
    t.rows = {{0.0, 1.0}, {0.5, 0.25}, {1.0, 0.125}};
    std::ostringstream os;
    emit(t, EmitFormat::Csv, os);
    const std::string text = os.str();
    CHECK(text == "delta,f\n0,1\n0.5,0.25\n1,0.125\n");

    SweepTable empty;
    empty.columns = {"delta", "f"};
    std::ostringstream os2;
    emit(empty, EmitFormat::Csv, os2);
    CHECK(os2.str() == "delta,f\n");
}

TEST_CASE("csv writes doubles with 17 significant digits") {
    SweepTable t;
    t.columns = {"x", "v"};
    t.rows = {{1.0 / 3.0, 0.1 + 0.2}};
    std::ostringstream os;
    emit(t, EmitFormat::Csv, os);
    CHECK(os.str() ==
          "x,v\n0.33333333333333331,0.30000000000000004\n");
}

TEST_CASE("json round trip restores the table exactly") {
    const SweepConfig cfg = small_fidelity_config();
    const SweepTable t = run_sweep(cfg);
    std::stringstream ss;
    emit(t, EmitFormat::Json, ss);
    const SweepTable back = parse_table_json(ss);
    CHECK(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            CHECK(back.rows[r][c] == t.rows[r][c]); // bit-exact
        }
    }
}

TEST_CASE("same config and seed emit byte-identical output") {
    const SweepConfig cfg = small_fidelity_config();
    std::ostringstream a, b;
    emit(run_sweep(cfg), EmitFormat::Csv, a);
    emit(run_sweep(cfg), EmitFormat::Csv, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("config file parsing") {
    std::istringstream is(R"(# comment
mode = fidelity_vs_delta
target = pi:0.8 pi:1.1 pi:1.6
phi_x = pi:0.1
lambda_x = pi:0.09
phi_x_alt = 0
lambda_x_alt = 0
axis = delta
start = pi:-0.5
stop = pi:0.5
steps = 5
outputs = f_ori_analytic f_best_analytic f_best_analytic_alt
seed = 321
)");
    const SweepConfig cfg = parse_sweep_config(is);
    CHECK(cfg.mode == SweepMode::FidelityVsDelta);
    CHECK(cfg.target.fixed.theta == doctest::Approx(0.8 * kPi));
    CHECK(cfg.error_base.phi_x == doctest::Approx(0.1 * kPi));
    REQUIRE(cfg.alt_phi_lambda.has_value());
    CHECK(cfg.alt_phi_lambda->first == 0.0);
    CHECK(cfg.axis.steps == 5);
    CHECK(cfg.seed == 321);
    REQUIRE(cfg.outputs.size() == 3);

    const SweepTable t = run_sweep(cfg);
    CHECK(t.columns.size() == 4);
    // the two analytic best-fidelity columns coincide: best fidelity only
    // depends on theta_x
    for (const auto& row : t.rows) {
        CHECK(row[2] == doctest::Approx(row[3]).epsilon(1e-15));
    }
}

TEST_CASE("config parser rejects malformed input with the field name") {
    const auto expect_error = [](const char* text, const char* needle) {
        std::istringstream is(text);
        CHECK_THROWS_WITH_AS(parse_sweep_config(is), doctest::Contains(needle),
                             ConfigError);
    };
    expect_error("target = 1 2 3\n", "mode");
    expect_error("mode = bogus\n", "mode");
    expect_error("mode = fidelity_vs_delta\nsteps = 3\n", "target");
    expect_error("mode = fidelity_vs_x\nsteps = 3\n", "path");
    expect_error("mode = fidelity_vs_delta\ntarget = 1 2\n", "target");
    expect_error("mode = fidelity_vs_delta\ntarget = 1 2 3\nsteps = x\n", "steps");
    expect_error("mode = fidelity_vs_delta\ntarget = 1 2 3\nbogus_key = 1\n",
                 "bogus_key");
    expect_error("mode = fidelity_vs_delta\ntarget = 1 2 3\nphi_x_alt = 0.1\n",
                 "phi_x_alt");
    expect_error("mode = fidelity_vs_delta\ntarget = 1 2 3\nnot a kv line\n",
                 "key = value");
}

TEST_CASE("check_table flags disagreement and statistical outliers") {
    const SweepConfig cfg = small_fidelity_config();
    SweepTable t = run_sweep(cfg);
    CHECK(check_table(cfg, t).ok);

    SweepTable broken = t;
    broken.rows[3][2] += 1e-6; // poke the numeric column
    const CheckReport r = check_table(cfg, broken);
    CHECK(!r.ok);
    CHECK(r.detail.find("f_ori") != std::string::npos);

    SweepTable mc;
    mc.columns = {"delta", "un_analytic", "un_monte_carlo", "mc_stderr"};
    mc.rows = {{0.1, 0.9, 0.9001, 0.001}};
    CHECK(check_table(cfg, mc).ok);
    mc.rows = {{0.1, 0.9, 0.91, 0.001}};
    CHECK(!check_table(cfg, mc).ok);
}

TEST_CASE("universality sweep columns") {
    SweepConfig cfg;
    cfg.mode = SweepMode::UniversalityVsDelta;
    cfg.axis = {"delta", 0.05 * kPi, 0.25 * kPi, 3};
    cfg.outputs = {"un_analytic", "un_monte_carlo", "mc_stderr", "delta_theta"};
    cfg.mc_samples = 20000;
    cfg.seed = 17;
    const SweepTable t = run_sweep(cfg);
    for (const auto& row : t.rows) {
        const double delta = row[0];
        CHECK(row[1] == doctest::Approx(1.0 - 2.0 * delta / kPi).epsilon(1e-12));
        CHECK(std::abs(row[2] - row[1]) <= 4.0 * row[3]);
        CHECK(row[4] == doctest::Approx(2.0 * delta).epsilon(1e-12));
    }
    CHECK(check_table(cfg, t).ok);
}

TEST_CASE("average-fidelity sweep columns") {
    SweepConfig cfg;
    cfg.mode = SweepMode::AverageFidelityVsDelta;
    cfg.error_base = {kPi / 2, 0.0, 0.0};
    cfg.axis = {"delta", 0.02 * kPi, 0.4 * kPi, 4};
    cfg.outputs = {"f_ori_ave", "f_ori_ave_quadrature", "f_best_ave_analytic",
                   "f_best_ave_quadrature"};
    cfg.quadrature_points = 150000;
    const SweepTable t = run_sweep(cfg);
    for (const auto& row : t.rows) {
        CHECK(std::abs(row[1] - row[2]) < 1e-8);
        CHECK(std::abs(row[3] - row[4]) < 1e-8);
        CHECK(row[3] >= row[1] - 1e-8); // averaged best dominates averaged original
    }
    CHECK(check_table(cfg, t).ok);
}
