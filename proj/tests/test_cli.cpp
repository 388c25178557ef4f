#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "roadsir/commands.hpp"
#include "roadsir/errors.hpp"

using namespace roadsir;
namespace fs = std::filesystem;

namespace {

std::string minimal_config(const std::string& run_id, const std::string& out_dir) {
    return R"({
      "run_id": ")" + run_id + R"(",
      "mode": "scalar_v",
      "out_dir": ")" + out_dir + R"(",
      "params": {"d": 1, "D": 1, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1},
      "grid": {"lx": 10, "ly": 2, "h": 0.25},
      "sources": {"i0": {"shape": "disk-indicator", "center": [0, 1], "radius": 1, "amplitude": 1}},
      "time": {"t_end": 2, "snapshot_dt": 1}
    })";
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("defaults are made explicit in the normalized echo") {
    const RunConfig cfg = parse_config_text(minimal_config("echo", "/tmp/roadsir_echo"));
    CHECK(cfg.grid->cfl == 0.4);
    CHECK(cfg.steady.tol == 1e-8);
    CHECK(cfg.steady.t_max == 500.0);
    CHECK(cfg.time->snapshot_dt == 1.0);
    CHECK(cfg.time->trace_dt == doctest::Approx(2.0 / 1200.0));
    const auto echo = normalized_json(cfg);
    CHECK(echo["grid"]["cfl"] == 0.4);
    CHECK(echo["sources"]["t0"]["shape"] == "none");
}

TEST_CASE("normalized echo round-trips") {
    const RunConfig cfg = parse_config_text(minimal_config("rt", "/tmp/roadsir_rt"));
    const auto echo = normalized_json(cfg);
    const RunConfig back = parse_config(echo);
    CHECK(normalized_json(back) == echo);
}

TEST_CASE("config errors name the offending path") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_config_text(text);
            FAIL_CHECK("expected a config error containing '" << needle << "'");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error(R"({"run_id": "x", "mode": "scalar_v",
                    "params": {"d": -1, "D": 1, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1}})",
                 "params.d");
    expect_error(R"({"run_id": "x", "mode": "scalar_v", "bogus": 1,
                    "params": {"d": 1, "D": 1, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1}})",
                 "bogus");
    expect_error(R"({"run_id": "x", "mode": "scalar_v",
                    "params": {"d": 1, "D": 1, "alpha": 1, "beta": 2, "mu": 1, "nu": 1}})",
                 "params.s0");
    expect_error(R"({"run_id": "x", "mode": "nope",
                    "params": {"d": 1, "D": 1, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1}})",
                 "mode");
    // i0 support too close to the truncation boundary is rejected at parse time
    expect_error(R"({"run_id": "x", "mode": "scalar_v",
                    "params": {"d": 1, "D": 1, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1},
                    "grid": {"lx": 10, "ly": 2, "h": 0.25},
                    "sources": {"i0": {"shape": "disk-indicator", "center": [4.5, 1], "radius": 1, "amplitude": 1}}})",
                 "sources.i0");
    expect_error("not json at all", "invalid JSON");
}

TEST_CASE("speed command reports the dichotomy") {
    TempDir dir("roadsir_speed_test");
    const std::string cfg_text = R"({
      "run_id": "sp",
      "mode": "roadfield_uv",
      "out_dir": ")" + dir.path.string() + R"(",
      "params": {"d": 1, "D": 1.5, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1}
    })";
    RunConfig cfg = parse_config_text(cfg_text);
    std::ostringstream out;
    const CommandResult r = cmd_speed(cfg, out);
    CHECK(r.exit_code == 0);
    CHECK(r.summary["c_SIR_T_over_c_SIR"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fs::exists(dir.path / "sp.summary.json"));
    CHECK(fs::exists(dir.path / "sp.config.json"));

    cfg.params.D = 10.0;
    const CommandResult enhanced = cmd_speed(cfg, out);
    CHECK(enhanced.summary["c_SIR_T_over_c_SIR"].get<double>() > 1.0);

    cfg.params.beta = 0.8;  // r0 < 1
    const CommandResult sub = cmd_speed(cfg, out);
    CHECK(sub.exit_code == 0);
    CHECK(sub.summary["dichotomy"] == "no_spreading");
    CHECK(out.str().find("no spreading") != std::string::npos);
}

TEST_CASE("simulate writes artifacts and t_end=0 yields only the initial snapshot") {
    TempDir dir("roadsir_sim_test");
    RunConfig cfg = parse_config_text(minimal_config("sim", dir.path.string()));
    std::ostringstream out;
    const CommandResult r = cmd_simulate(cfg, out);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir.path / "sim_t0.csv"));
    CHECK(fs::exists(dir.path / "sim_t2.csv"));
    CHECK(fs::exists(dir.path / "front_trace.csv"));
    CHECK(fs::exists(dir.path / "tau_star.csv"));
    CHECK(r.summary["boundary_warning"] == false);

    RunConfig frozen = cfg;
    frozen.run_id = "frozen";
    frozen.time->t_end = 0.0;
    const CommandResult r0 = cmd_simulate(frozen, out);
    CHECK(r0.exit_code == 0);
    CHECK(fs::exists(dir.path / "frozen_t0.csv"));
    CHECK_FALSE(fs::exists(dir.path / "frozen_t2.csv"));
    CHECK(r0.summary["measured_speed"].is_null());
}

TEST_CASE("identical configs produce byte-identical outputs") {
    TempDir a("roadsir_det_a");
    TempDir b("roadsir_det_b");
    std::ostringstream out;
    RunConfig ca = parse_config_text(minimal_config("det", a.path.string()));
    RunConfig cb = parse_config_text(minimal_config("det", b.path.string()));
    cmd_simulate(ca, out);
    cmd_simulate(cb, out);
    size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(a.path)) {
        const fs::path other = b.path / entry.path().filename();
        if (entry.path().filename() == "det.config.json") continue;  // embeds out_dir
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
        ++compared;
    }
    CHECK(compared >= 4);
}

TEST_CASE("steady command fits decay rates") {
    TempDir dir("roadsir_steady_test");
    const std::string text = R"({
      "run_id": "st",
      "mode": "roadfield_uv",
      "out_dir": ")" + dir.path.string() + R"(",
      "params": {"d": 1, "D": 10, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1},
      "grid": {"lx": 25, "ly": 6, "h": 0.25},
      "sources": {"i0": {"shape": "disk-indicator", "center": [0, 1], "radius": 1, "amplitude": 1}},
      "steady": {"tol": 1e-9, "t_max": 120}
    })";
    RunConfig cfg = parse_config_text(text);
    std::ostringstream out;
    const CommandResult r = cmd_steady(cfg, out);
    CHECK(r.exit_code == 0);
    CHECK(r.summary["converged"] == true);
    CHECK(fs::exists(dir.path / "st_steady.csv"));
    CHECK(fs::exists(dir.path / "st_steady_road.csv"));
    CHECK(fs::exists(dir.path / "decay_fit.csv"));
    const double plateau = r.summary["plateau_u"].get<double>();
    CHECK(plateau == doctest::Approx(0.79681213).epsilon(0.02));

    // an unreachable tolerance reports failure through exit code 3
    RunConfig hard = cfg;
    hard.run_id = "hard";
    hard.steady.tol = 1e-300;
    hard.steady.t_max = 0.5;
    const CommandResult bad = cmd_steady(hard, out);
    CHECK(bad.exit_code == 3);
    CHECK(bad.summary["converged"] == false);
}

TEST_CASE("compare command finds both regions on a small golden case") {
    TempDir dir("roadsir_cmp_test");
    const std::string text = R"({
      "run_id": "cmp",
      "mode": "roadfield_uv",
      "out_dir": ")" + dir.path.string() + R"(",
      "params": {"d": 1, "D": 10, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1},
      "grid": {"lx": 16, "ly": 8, "h": 0.25},
      "sources": {"i0": {"shape": "disk-indicator", "center": [0, 0], "radius": 1.5, "amplitude": 2}},
      "steady": {"tol": 1e-9, "t_max": 80}
    })";
    RunConfig cfg = parse_config_text(text);
    std::ostringstream out;
    const CommandResult r = cmd_compare(cfg, out);
    CHECK(r.exit_code == 0);
    CHECK(r.summary["e_plus_count"].get<long long>() > 0);
    CHECK(r.summary["e_minus_count"].get<long long>() > 0);
    CHECK(std::abs(r.summary["balance_road_residual"].get<double>()) < 1e-2);
    CHECK(fs::exists(dir.path / "regions.csv"));
    CHECK(fs::exists(dir.path / "cmp_itot_road.csv"));

    RunConfig with_road_source = cfg;
    with_road_source.t0.shape = SourceSpec::Shape::disk;
    with_road_source.t0.radius = 1.0;
    with_road_source.t0.amplitude = 1.0;
    CHECK_THROWS_AS(cmd_compare(with_road_source, out), config_error);
}

TEST_CASE("sweep columns follow the dichotomy and stay in input order") {
    TempDir dir("roadsir_sweep_test");
    const std::string text = R"({
      "run_id": "sw",
      "mode": "roadfield_uv",
      "out_dir": ")" + dir.path.string() + R"(",
      "params": {"d": 1, "D": 1, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1},
      "sweep": {"axis": "params.D", "values": [1, 2, 4, 8]}
    })";
    RunConfig cfg = parse_config_text(text);
    std::ostringstream out;
    const CommandResult r = cmd_sweep(cfg, out);
    CHECK(r.exit_code == 0);
    const auto& rows = r.summary["rows"];
    REQUIRE(rows.size() == 4);
    double prev = 0.0;
    for (size_t k = 0; k < rows.size(); ++k) {
        const double c = rows[k]["c_SIR_T"].get<double>();
        CHECK(c >= prev);
        prev = c;
        if (rows[k]["value"].get<double>() <= 2.0) {
            CHECK(c == doctest::Approx(2.0).epsilon(1e-6));
        } else {
            CHECK(c > 2.0);
        }
    }

    // lambda sweep via mu: the reduced road speed is nonincreasing
    RunConfig lam = cfg;
    lam.run_id = "sw_mu";
    lam.params.D = 50.0;
    lam.sweep->axis = "params.mu";
    lam.sweep->values = {0.25, 0.5, 1.0, 2.0, 4.0};
    const CommandResult rl = cmd_sweep(lam, out);
    double wprev = 1e9;
    for (const auto& row : rl.summary["rows"]) {
        const double w = row["w_bar"].get<double>();
        CHECK(w <= wprev + 1e-9);
        wprev = w;
    }

    // a fast road keeps the enhancement large even just above threshold,
    // where the no-road speed itself crawls
    RunConfig r0sweep = cfg;
    r0sweep.run_id = "sw_r0";
    r0sweep.params.D = 100.0;
    r0sweep.sweep->axis = "params.r0";
    r0sweep.sweep->values = {1.1, 1.5, 2.0};
    const CommandResult rr = cmd_sweep(r0sweep, out);
    for (const auto& row : rr.summary["rows"]) {
        CHECK(row["c_SIR_T_over_c_SIR"].get<double>() > 3.0);
    }
    CHECK(rr.summary["rows"][0]["c_SIR"].get<double>() < 0.7);
    CHECK(rr.summary["rows"][0]["c_SIR_T"].get<double>() > 2.0);

    RunConfig bad = cfg;
    bad.sweep->axis = "grid.h";
    CHECK_THROWS_AS(cmd_sweep(bad, out), config_error);

    // invalid values surface as config errors even from worker threads
    RunConfig badval = cfg;
    badval.run_id = "sw_bad";
    badval.sweep->values = {1.0, -2.0, 4.0};
    CHECK_THROWS_AS(cmd_sweep(badval, out), config_error);
}

TEST_CASE("omega command matches the curve and its finite counterpart") {
    TempDir dir("roadsir_omega_test");
    const std::string text = R"({
      "run_id": "om",
      "mode": "scalar_v",
      "out_dir": ")" + dir.path.string() + R"(",
      "params": {"d": 1, "D": 1, "alpha": 1, "beta": 2, "mu": 1, "nu": 1, "s0": 1},
      "omega": {"lambda_grid": [0, 0.5, 1]}
    })";
    RunConfig cfg = parse_config_text(text);
    std::ostringstream out;
    const CommandResult r = cmd_omega(cfg, out);
    CHECK(r.exit_code == 0);
    const auto& rows = r.summary["rows"];
    CHECK(rows[0]["omega"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
    double prev = 1.0;
    for (const auto& row : rows) {
        const double w = row["omega"].get<double>();
        CHECK(w <= prev);
        prev = w;
        CHECK(row["reduced_speed"].get<double>() == doctest::Approx(w).epsilon(0.02));
    }
}

TEST_SUITE_END();
