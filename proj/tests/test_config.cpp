#include "doctest.h"

#include "pmhd/config.hpp"
#include "pmhd/errors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pmhd;
namespace fs = std::filesystem;

namespace {

const fs::path sourceDir = PMHD_SOURCE_DIR;


// First line of a fixture reads "; expect: <citation>".
std::string expectedCitation(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    const std::string tag = "; expect: ";
    return line.rfind(tag, 0) == 0 ? line.substr(tag.size()) : "";
}

std::string rejection(const std::string& text) {
    try {
        parseConfig(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("every invalid fixture is rejected with its citation") {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(sourceDir / "tests/fixtures")) {
        const fs::path p = entry.path();
        if (p.filename().string().rfind("invalid_", 0) != 0) continue;
        ++seen;
        const std::string expect = expectedCitation(p);
        INFO(p.filename().string());
        REQUIRE_FALSE(expect.empty());
        try {
            validateConfig(p.string());
            FAIL("accepted");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(expect + " (got ") != std::string::npos);
        }
    }
    CHECK(seen >= 5);
}

TEST_CASE("parameter rejections name the condition and the offending value") {
    CHECK(rejection("[scheme]\ngamma = 1.4\n").find("violated condition: gamma > 3/2 (got gamma = 1.3999999999999999)") !=
          std::string::npos);
    CHECK(rejection("[scheme]\nnu = -1\n").find("violated condition: nu > 0") != std::string::npos);
    CHECK(rejection("[scheme]\ngamma = 5\nbeta = 5\n").find("violated condition: beta > max(4, gamma)") !=
          std::string::npos);
    // all problems at once
    const std::string both = rejection("[scheme]\ngamma = 1.2\nnu = 0\n");
    CHECK(both.find("gamma > 3/2") != std::string::npos);
    CHECK(both.find("nu > 0") != std::string::npos);
}

TEST_CASE("malformed input is rejected") {
    CHECK_FALSE(rejection("[scheme]\nnu = fast\n").empty());
    CHECK_FALSE(rejection("[scheme]\nviscosity = 1\n").empty());
    CHECK_FALSE(rejection("[nonsense]\na = 1\n").empty());
    CHECK_FALSE(rejection("[grid]\nnx = 2\n").empty());
    CHECK_FALSE(rejection("[body1]\nshape = triangle\n").empty());
    CHECK_FALSE(rejection("[initial]\nvacuum = 0.5 0.2 0 1\n").empty());
    CHECK_THROWS_AS(validateConfig("/nonexistent/config.ini"), IoError);
}

TEST_CASE("defaults are filled and the normalized text parses back to itself") {
    const RunConfig c = parseConfig("[scheme]\ndt = 0.02\n");
    CHECK(c.params.eps == 0.02);
    CHECK(c.epsDefaulted);
    CHECK(c.params.gamma == 2.0);
    const std::string text = normalizedConfig(c);
    CHECK(text.find("gamma = 2") != std::string::npos);
    CHECK(normalizedConfig(parseConfig(text)) == text);

    for (const char* preset : {"smoke", "resistive_decay", "gravity_settling", "spin_down", "scaled_smoke"}) {
        INFO(preset);
        const RunConfig p = validateConfig((sourceDir / "presets" / (std::string(preset) + ".ini")).string());
        const std::string norm = normalizedConfig(p);
        const RunConfig again = parseConfig(norm);
        CHECK(normalizedConfig(again) == norm);
        CHECK(again.bodies.size() == p.bodies.size());
        CHECK(again.params.dt == p.params.dt);
        CHECK(again.grid == p.grid);
    }
}

TEST_CASE("momentum is zeroed where the initial density vanishes") {
    const RunConfig c = validateConfig((sourceDir / "tests/fixtures/vacuum_momentum.ini").string());
    REQUIRE(c.warnings.size() == 1);
    CHECK(c.warnings[0].find("initial momentum (rho u)0 set to 0 on 24 faces where rho0 = 0") != std::string::npos);

    const InitialData d = buildInitialData(c);
    const Grid& g = c.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const bool emptyLeft = i > 0 && d.mech.rho(i - 1, j) == 0.0;
            const bool emptyRight = i < g.nx && d.mech.rho(i, j) == 0.0;
            if (emptyLeft || emptyRight) CHECK(d.mech.u.x()(i, j) == 0.0);
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const bool emptyBelow = j > 0 && d.mech.rho(i, j - 1) == 0.0;
            const bool emptyAbove = j < g.ny && d.mech.rho(i, j) == 0.0;
            if (emptyBelow || emptyAbove) CHECK(d.mech.u.y()(i, j) == 0.0);
        }
    CHECK(d.mech.u.maxAbs() > 0.0);
}

TEST_CASE("initial noise is reproducible from the seed") {
    RunConfig c = validateConfig((sourceDir / "presets/smoke.ini").string());
    const InitialData a = buildInitialData(c);
    const InitialData b = buildInitialData(c);
    c.seed += 1;
    const InitialData other = buildInitialData(c);
    bool same = true, differs = false;
    for (std::size_t k = 0; k < a.mech.rho.size(); ++k) {
        same = same && a.mech.rho.values()[k] == b.mech.rho.values()[k];
        differs = differs || a.mech.rho.values()[k] != other.mech.rho.values()[k];
    }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("scales section closes to a consistent set") {
    const RunConfig c = validateConfig((sourceDir / "presets/scaled_smoke.ini").string());
    REQUIRE(c.scales.has_value());
    const CharacteristicScales s = c.scales->close();
    CHECK(s.ubar == doctest::Approx(0.1));
    CHECK(s.rhobar == 6000.0);
    CHECK_FALSE(rejection("[scales]\nxbar = 1\ntbar = 0\nbbar = 1\n").empty());
}
