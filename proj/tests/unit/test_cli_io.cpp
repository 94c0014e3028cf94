#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "radeuler/config.hpp"
#include "radeuler/driver.hpp"
#include "radeuler/eos.hpp"
#include "radeuler/errors.hpp"
#include "radeuler/io.hpp"

using namespace radeuler;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    static const auto root = [] {
        std::random_device rd;
        auto p = fs::temp_directory_path() / ("radeuler_test_" + std::to_string(rd()));
        fs::create_directories(p);
        return p;
    }();
    const auto p = root / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::string config_error(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

RunConfig small(double t_final = 0.2) {
    RunConfig cfg;
    cfg.n = 32;
    cfg.time.t_final = t_final;
    cfg.time.output_interval = 0.1;
    cfg.diagnostics.interval = 0.05;
    return cfg;
}

}  // namespace

TEST_CASE("defaults") {
    const auto cfg = parse_config_text("");
    CHECK(cfg.gas.cv == 1.5);
    CHECK(cfg.gas.A == 1.0);
    CHECK(cfg.geometry.a == 1.0);
    CHECK(cfg.geometry.b == 2.0);
    CHECK(cfg.n == 256);
    CHECK(cfg.time.cfl == 0.4);
    CHECK(cfg.nu == 0.0);
    CHECK(cfg.mode == RunMode::Nonlinear);
    CHECK(cfg.time.integrator == Integrator::SspRk3);
    CHECK(cfg == RunConfig{});
}

TEST_CASE("config errors name the key") {
    CHECK(config_error("[geometry]\na = 2\nb = 1\n").find("geometry.b") != std::string::npos);
    CHECK(config_error("[run]\nmode = picard\n").find("picard.T") != std::string::npos);
    CHECK(config_error("[grid]\nbogus = 3\n").find("grid.bogus") != std::string::npos);
    CHECK(config_error("[time]\ncfl = 0\n").find("time.cfl") != std::string::npos);
    CHECK(config_error("[time]\ncfl = fast\n").find("time.cfl") != std::string::npos);
    CHECK(config_error("[grid]\nn = 2\n").find("grid.n") != std::string::npos);
    CHECK(config_error("[gas]\ncv = -1\n").find("gas.cv") != std::string::npos);
    CHECK(config_error("[run]\nmode = fast\n").find("run.mode") != std::string::npos);
    CHECK(config_error("n = 3\n").find("outside") != std::string::npos);
    CHECK(config_error("[grid\n").find("line 1") != std::string::npos);
    CHECK_NOTHROW(parse_config_text("[run]\nmode = picard\n[picard]\nT = 0.05\n"));
}

TEST_CASE("config parsing with comments and sections") {
    const auto cfg = parse_config_text(
        "# comment\n[geometry]\na = 0.5  # inline\nb = 3\n[grid]\nn = 64\n[run]\nmode = radiation-off\n"
        "[initial]\nprofile = sine-bump\nepsilon = 1e-4\n[time]\nintegrator = ssp-rk2\n");
    CHECK(cfg.geometry.a == 0.5);
    CHECK(cfg.geometry.b == 3.0);
    CHECK(cfg.n == 64);
    CHECK(cfg.mode == RunMode::RadiationOff);
    CHECK(cfg.initial.profile == ProfileKind::SineBump);
    CHECK(cfg.initial.epsilon == 1e-4);
    CHECK(cfg.time.integrator == Integrator::SspRk2);
    CHECK(solver_options(cfg).radiation_coupling == 0.0);
}

TEST_CASE("config round trip") {
    RunConfig cfg;
    cfg.geometry = {0.7, 1.9};
    cfg.gas = {2.5, 1.3};
    cfg.n = 96;
    cfg.time.cfl = 0.3;
    cfg.time.t_final = 2.0 / 3.0;
    cfg.mode = RunMode::Picard;
    cfg.picard.T = 0.1 / 3.0;
    cfg.picard.k_max = 5;
    cfg.initial.epsilon = 1.0 / 7.0 * 1e-3;
    cfg.initial.custom_P = "p.txt";
    cfg.diagnostics.enabled = false;
    cfg.nu = 0.125;
    const auto back = parse_config_text(write_config(cfg));
    CHECK(back == cfg);
    CHECK(parse_config_text(write_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("overrides") {
    RunConfig cfg;
    apply_override(cfg, "grid.n", "128");
    apply_override(cfg, "initial.epsilon", "5e-4");
    apply_override(cfg, "run.mode", "linearized");
    CHECK(cfg.n == 128);
    CHECK(cfg.initial.epsilon == 5e-4);
    CHECK(cfg.mode == RunMode::Linearized);
    CHECK_THROWS_AS(apply_override(cfg, "grid.m", "1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "grid.n", "x"), ConfigError);
    const auto keys = config_keys();
    CHECK(std::find(keys.begin(), keys.end(), "picard.T") != keys.end());
    CHECK(std::find(keys.begin(), keys.end(), "time.integrator") != keys.end());
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("Eulerian profile at equilibrium") {
    auto cfg = small(0.0);
    cfg.n = 256;
    cfg.initial.epsilon = 0.0;
    const auto result = run(cfg);
    REQUIRE(result.trajectory.size() == 1);
    const auto prof = reconstruct_eulerian(result.trajectory.front(), result.grid);
    const auto eq = equilibrium_constants(cfg.gas);
    CHECK(prof.r.front() == 1.0);
    CHECK(prof.r.back() == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 0; i < prof.r.size(); ++i) {
        CHECK(prof.rho[i] == doctest::Approx(eq.rho).epsilon(1e-14));
        CHECK(prof.theta[i] == doctest::Approx(eq.theta).epsilon(1e-14));
        CHECK(prof.u[i] == 0.0);
        CHECK(prof.q[i] == 0.0);
    }
    CHECK(prof.mass_error <= 1e-6);
}

TEST_CASE("Eulerian mass check and monotone radius on perturbed data") {
    auto cfg = small(0.5);
    cfg.n = 256;
    cfg.initial.epsilon = 1e-2;
    const auto result = run(cfg);
    REQUIRE(result.status == RunStatus::Completed);
    for (const auto& snap : result.trajectory) {
        const auto prof = reconstruct_eulerian(snap, result.grid);
        CHECK(prof.mass_error <= 1e-6);
        CHECK(prof.mass == doctest::Approx(result.grid.total_mass).epsilon(1e-6));
        for (std::size_t i = 1; i < prof.r.size(); ++i) {
            CHECK(prof.r[i] > prof.r[i - 1]);
        }
    }
}

TEST_CASE("t_final = 0 writes only the initial slice") {
    auto cfg = small(0.0);
    const auto dir = scratch("t0");
    write_outputs(run(cfg), dir);
    const auto rows = lines_of(dir / "trajectory.csv");
    REQUIRE(rows.size() == cfg.n + 2);
    CHECK(rows.front() == kTrajectoryHeader);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].rfind("0,", 0) == 0);
    }
    CHECK(fs::exists(dir / "diagnostics.csv"));
    CHECK(fs::exists(dir / "eulerian.csv"));
    CHECK(fs::exists(dir / "summary.txt"));
    CHECK(fs::exists(dir / "plot.gp"));
    CHECK_FALSE(fs::exists(dir / "iterations.csv"));
}

TEST_CASE("headers, precision and byte-identical reruns") {
    const auto cfg = small(0.2);
    const auto a = scratch("rerun_a");
    const auto b = scratch("rerun_b");
    write_outputs(run(cfg), a);
    write_outputs(run(cfg), b);
    for (const char* f : {"trajectory.csv", "diagnostics.csv", "eulerian.csv"}) {
        CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK(lines_of(a / "diagnostics.csv").front() == kDiagnosticsHeader);
    CHECK(lines_of(a / "eulerian.csv").front() == kEulerianHeader);
    const auto traj = lines_of(a / "trajectory.csv");
    CHECK(traj.size() == 3 * (cfg.n + 1) + 1);
    // Perturbed pressure is written with 17 significant digits.
    const auto row = traj[cfg.n / 2 + 1];
    const auto first = row.find(',', row.find(',') + 1);
    const auto second = row.find(',', first + 1);
    const auto P = row.substr(first + 1, second - first - 1);
    CHECK(std::stod(P) != 1.0);
    CHECK(P.size() >= 18);

    const auto summary = slurp(a / "summary.txt");
    CHECK(summary.find("status = completed") != std::string::npos);
    CHECK(summary.find("wall_seconds") != std::string::npos);
    CHECK(parse_config_text(summary.substr(0, summary.find("[result]"))) == cfg);
}

TEST_CASE("picard mode writes the iteration table") {
    auto cfg = small(0.05);
    cfg.mode = RunMode::Picard;
    cfg.picard.T = 0.05;
    cfg.picard.k_max = 4;
    const auto result = run(cfg);
    REQUIRE(result.status == RunStatus::Completed);
    const auto dir = scratch("picard");
    write_outputs(result, dir);
    const auto rows = lines_of(dir / "iterations.csv");
    REQUIRE(rows.size() == result.picard.deltas.size() + 1);
    CHECK(rows.front() == kIterationsHeader);
    CHECK(rows[1].rfind("0,", 0) == 0);
    CHECK(rows[1].back() == ',');  // no ratio for the first delta
    CHECK(rows[2].back() != ',');
}

TEST_CASE("linearized and radiation-off modes") {
    auto cfg = small(0.1);
    cfg.mode = RunMode::Linearized;
    const auto lin = run(cfg);
    CHECK(lin.status == RunStatus::Completed);
    CHECK(lin.trajectory.back().t == doctest::Approx(0.1).epsilon(1e-14));

    cfg.mode = RunMode::RadiationOff;
    const auto off = run(cfg);
    CHECK(off.status == RunStatus::Completed);
    for (const auto& snap : off.trajectory) {
        for (const double q : snap.q) {
            CHECK(q == 0.0);
        }
    }
}

TEST_CASE("a blow-up keeps the partial trajectory and marks the failure") {
    auto cfg = small(20.0);
    cfg.n = 64;
    cfg.mode = RunMode::RadiationOff;
    cfg.time.integrator = Integrator::SspRk2;
    cfg.time.output_interval = 1.0;
    cfg.diagnostics.interval = 0.5;
    const auto result = run(cfg);
    REQUIRE(result.status == RunStatus::StateInvalid);
    CHECK_FALSE(result.failure.empty());
    CHECK(result.trajectory.size() >= 2);
    CHECK(result.trajectory.back().t < 20.0);
    const auto dir = scratch("blowup");
    write_outputs(result, dir);
    CHECK(slurp(dir / "summary.txt").find("status = state-invalid") != std::string::npos);
}

TEST_CASE("sample files") {
    const auto dir = scratch("samples");
    fs::create_directories(dir);
    {
        std::ofstream(dir / "one.txt") << "# pressure\nvalue\n0\n0.5\n1\n\n";
        std::ofstream(dir / "two.csv") << "r,value\n1,0\n1.5,1\n2,0\n";
        std::ofstream(dir / "bad.txt") << "1\nabc\n";
        std::ofstream(dir / "mixed.txt") << "1 2\n3\n";
    }
    const auto one = load_samples(dir / "one.txt");
    CHECK(one.radii.empty());
    CHECK(one.values == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(samples_on_grid(one, AnnulusGeometry{}, 3) == one.values);
    CHECK_THROWS_AS(samples_on_grid(one, AnnulusGeometry{}, 5), InputError);

    const auto two = load_samples(dir / "two.csv");
    REQUIRE(two.radii.size() == 3);
    const auto grid = samples_on_grid(two, AnnulusGeometry{}, 5);
    CHECK(grid[1] == doctest::Approx(0.5));
    CHECK(grid[2] == doctest::Approx(1.0));
    CHECK_THROWS_AS(samples_on_grid(two, AnnulusGeometry{1.0, 3.0}, 5), InputError);

    CHECK_THROWS_AS(load_samples(dir / "bad.txt"), InputError);
    CHECK_THROWS_AS(load_samples(dir / "mixed.txt"), InputError);
    CHECK_THROWS_AS(load_samples(dir / "missing.txt"), IoError);

    RunConfig cfg = small(0.0);
    cfg.n = 4;
    cfg.initial.profile = ProfileKind::Custom;
    cfg.initial.custom_P = (dir / "two.csv").string();
    const auto data = initial_data_from_config(cfg);
    CHECK(data.P[2] > 1.0);
    CHECK(data.s[2] == 1.0);
}

TEST_CASE("output root from the environment") {
    const auto root = scratch("env_root");
    ::setenv("RADEULER_OUTPUT_ROOT", root.string().c_str(), 1);
    CHECK(default_output_root() == root);
    CHECK(output_directory("", "picard") == root / "picard");
    CHECK(output_directory("custom/dir", "picard") == fs::path("custom/dir"));
    ::unsetenv("RADEULER_OUTPUT_ROOT");
    CHECK(default_output_root() == fs::path("runs"));
}

TEST_CASE("unwritable output directory surfaces an I/O error with the path") {
    const auto blocker = scratch("blocker");
    std::ofstream(blocker) << "file";
    try {
        write_outputs(run(small(0.0)), blocker / "sub");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("blocker") != std::string::npos);
    }
}
