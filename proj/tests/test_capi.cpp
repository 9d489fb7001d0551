#include "doctest.h"

#include "pmhd/pmhd.h"

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path sourceDir = PMHD_SOURCE_DIR;

std::string take(char* s) {
    std::string out = s ? s : "";
    pmhd_string_free(s);
    return out;
}

pmhd_config* load(const fs::path& p) {
    pmhd_config* c = nullptr;
    REQUIRE(pmhd_config_load(p.string().c_str(), &c) == PMHD_OK);
    return c;
}

}  // namespace

TEST_CASE("version and error reporting") {
    CHECK(std::strlen(pmhd_version()) > 0);
    pmhd_config* c = nullptr;
    CHECK(pmhd_config_load("/nonexistent.ini", &c) == PMHD_ERR_IO);
    CHECK(c == nullptr);
    CHECK(std::string(pmhd_last_error()).find("nonexistent") != std::string::npos);
    CHECK(pmhd_config_load(nullptr, &c) == PMHD_ERR_ARGUMENT);
    CHECK(pmhd_config_parse("[scheme]\ngamma = 1.4\n", &c) == PMHD_ERR_CONFIG);
    CHECK(std::string(pmhd_last_error()).find("violated condition: gamma > 3/2") != std::string::npos);
    REQUIRE(pmhd_config_parse("[grid]\nnx = 8\n", &c) == PMHD_OK);
    CHECK(std::string(pmhd_last_error()).empty());
    pmhd_config_free(c);
    pmhd_config_free(nullptr);
}

TEST_CASE("normalized text and warnings") {
    pmhd_config* c = load(sourceDir / "tests/fixtures/vacuum_momentum.ini");
    char* text = nullptr;
    REQUIRE(pmhd_config_normalized(c, &text) == PMHD_OK);
    const std::string norm = take(text);
    CHECK(norm.find("[scheme]") != std::string::npos);
    pmhd_config* again = nullptr;
    REQUIRE(pmhd_config_parse(norm.c_str(), &again) == PMHD_OK);
    REQUIRE(pmhd_config_normalized(again, &text) == PMHD_OK);
    CHECK(take(text) == norm);

    REQUIRE(pmhd_config_warnings(c, &text) == PMHD_OK);
    CHECK(take(text).find("set to 0 on 24 faces") != std::string::npos);
    pmhd_config_free(again);
    pmhd_config_free(c);
}

TEST_CASE("overrides and a short run") {
    pmhd_config* c = load(sourceDir / "presets/smoke.ini");
    const fs::path out = fs::temp_directory_path() / "pmhd_test_capi";
    fs::remove_all(out);
    CHECK(pmhd_config_set_steps(c, -1) == PMHD_ERR_ARGUMENT);
    CHECK(pmhd_config_set_out_dir(c, "") == PMHD_ERR_ARGUMENT);
    REQUIRE(pmhd_config_set_steps(c, 4) == PMHD_OK);
    REQUIRE(pmhd_config_set_seed(c, 123) == PMHD_OK);
    REQUIRE(pmhd_config_set_out_dir(c, out.string().c_str()) == PMHD_OK);

    std::vector<std::string> lines;
    auto log = [](const char* line, void* user) { static_cast<std::vector<std::string>*>(user)->push_back(line); };
    pmhd_run_summary s{};
    REQUIRE(pmhd_run(c, log, &lines, &s) == PMHD_OK);
    CHECK(s.exit_code == 0);
    CHECK(s.steps_done == 4);
    CHECK(s.initial_energy > 0.0);
    CHECK(s.max_div_b <= 1e-12);
    CHECK_FALSE(lines.empty());
    CHECK(fs::exists(out / "timeseries.csv"));
    CHECK(pmhd_run(c, nullptr, nullptr, nullptr) == PMHD_OK);
    pmhd_config_free(c);
}

TEST_CASE("nondim report") {
    pmhd_config* c = load(sourceDir / "presets/scaled_smoke.ini");
    char* text = nullptr;
    REQUIRE(pmhd_nondim_report(c, &text) == PMHD_OK);
    const std::string r = take(text);
    CHECK(r.find("displacement_ratio: ") != std::string::npos);
    CHECK(r.find("dimensionless_nu: ") != std::string::npos);
    pmhd_config_free(c);

    c = load(sourceDir / "presets/smoke.ini");
    CHECK(pmhd_nondim_report(c, &text) == PMHD_ERR_CONFIG);
    pmhd_config_free(c);
}

TEST_CASE("pillbox csv") {
    char* csv = nullptr;
    REQUIRE(pmhd_pillbox_csv(0.2, 4, 1e-4, &csv) == PMHD_OK);
    const std::string t = take(csv);
    CHECK(t.rfind("# pmhd-pillbox v1\nstudy,case,size,defect,slope,identically_satisfied\n", 0) == 0);
    CHECK(t.find("tangential,current-sheet,0.20000000000000001,") != std::string::npos);
    CHECK(t.find("normal,continuous,") != std::string::npos);
    CHECK(pmhd_pillbox_csv(0.2, 3, 1e-4, &csv) == PMHD_ERR_ARGUMENT);
}
