#include "doctest.h"

#include "pmhd/config.hpp"
#include "pmhd/run.hpp"
#include "pmhd/timeseries.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pmhd;
namespace fs = std::filesystem;

namespace {

const fs::path sourceDir = PMHD_SOURCE_DIR;

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "pmhd_test_run" / name;
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunOutcome runFile(const fs::path& config, const fs::path& out, std::optional<long> steps = std::nullopt) {
    RunOptions o;
    o.outDir = out.string();
    o.steps = steps;
    return runSimulation(validateConfig(config.string()), o);
}

}  // namespace

TEST_CASE("zero data runs cleanly with zero ledgers") {
    const fs::path out = scratch("zero");
    const RunOutcome r = runFile(sourceDir / "tests/fixtures/zero_data.ini", out);
    CHECK(r.exitCode == kExitOk);
    CHECK(r.stepsDone == 5);
    const TimeSeriesTable t = readTimeSeries((out / "timeseries.csv").string());
    REQUIRE(t.rows.size() == 5);
    for (const auto& row : t.rows)
        for (const char* c : {"kinetic", "internal", "artificial", "magnetic", "total", "dissipation", "sources", "slack"})
            CHECK(row[t.column(c)] == 0.0);
}

TEST_CASE("smoke preset: fast, clean, and complete artifacts") {
    const fs::path out = scratch("smoke");
    const auto start = std::chrono::steady_clock::now();
    const RunOutcome r = runFile(sourceDir / "presets/smoke.ini", out);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(seconds < 10.0);
    CHECK(r.exitCode == kExitOk);
    CHECK(r.stepsDone == 50);
    CHECK(r.worstSlackRatio <= 1.0);
    CHECK(r.maxDivB <= 1e-12);
    CHECK(r.maxMassDrift <= 1e-10);
    for (const char* f : {"timeseries.csv", "metadata.ini", "rho.txt", "u_x.txt", "u_y.txt", "psi.txt"})
        CHECK(fs::exists(out / f));

    const TimeSeriesTable t = readTimeSeries((out / "timeseries.csv").string());
    REQUIRE(t.rows.size() == 50);
    for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(t.rows[k][t.column("time")] > t.rows[k - 1][t.column("time")]);
    CHECK(t.column("body1_rigidity") > 0);
}

TEST_CASE("metadata reproduces the run bit for bit") {
    const fs::path first = scratch("repro_a"), second = scratch("repro_b");
    RunOptions o;
    o.outDir = first.string();
    o.steps = 12;
    o.seed = 99;
    const RunOutcome a = runSimulation(validateConfig((sourceDir / "presets/smoke.ini").string()), o);
    REQUIRE(a.exitCode == kExitOk);
    const RunOutcome b = runFile(first / "metadata.ini", second);
    REQUIRE(b.exitCode == kExitOk);
    CHECK(b.stepsDone == 12);
    const std::string csvA = slurp(first / "timeseries.csv");
    CHECK_FALSE(csvA.empty());
    CHECK(csvA == slurp(second / "timeseries.csv"));
    CHECK(slurp(first / "psi.txt") == slurp(second / "psi.txt"));
    CHECK(slurp(first / "rho.txt") == slurp(second / "rho.txt"));
}

TEST_CASE("metadata records the regularizer choice and the nondim report") {
    const fs::path out = scratch("meta");
    const RunOutcome r = runFile(sourceDir / "presets/scaled_smoke.ini", out, 2);
    REQUIRE(r.exitCode == kExitOk);
    const std::string meta = slurp(out / "metadata.ini");
    CHECK(meta.find("[metadata]") != std::string::npos);
    CHECK(meta.find("eps_source = config") != std::string::npos);
    CHECK(meta.find("[nondim]") != std::string::npos);
    CHECK(meta.find("displacement_ratio = ") != std::string::npos);

    const fs::path plain = scratch("meta_default");
    REQUIRE(runFile(sourceDir / "presets/smoke.ini", plain, 1).exitCode == kExitOk);
    CHECK(slurp(plain / "metadata.ini").find("eps_source = default (eps = dt)") != std::string::npos);
}

TEST_CASE("a huge time step fails with a named check") {
    RunConfig c = validateConfig((sourceDir / "presets/smoke.ini").string());
    c.params.dt = 1e3;
    c.params.eps = 1e3;
    RunOptions o;
    o.outDir = scratch("huge").string();
    o.steps = 5;
    const RunOutcome r = runSimulation(c, o);
    CHECK((r.exitCode == kExitInvariant || r.exitCode == kExitSolver));
    CHECK(r.message.find("CFL") != std::string::npos);
    CHECK(slurp(fs::path(*o.outDir) / "metadata.ini").find("exit_code = " + std::to_string(r.exitCode)) !=
          std::string::npos);
}

TEST_CASE("an impossible output directory is a config/IO failure") {
    const fs::path file = scratch("blocker");
    fs::create_directories(file.parent_path());
    std::ofstream(file) << "x";
    RunOptions o;
    o.outDir = (file / "sub").string();
    const RunOutcome r = runSimulation(validateConfig((sourceDir / "tests/fixtures/zero_data.ini").string()), o);
    CHECK(r.exitCode == kExitConfig);
}
