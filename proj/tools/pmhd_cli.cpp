#include "pmhd/pmhd.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

struct Globals {
    std::string config;
    std::string outDir;
    std::optional<long> steps;
    std::optional<std::uint64_t> seed;
};

struct PillboxArgs {
    double firstSize = 0.2;
    int count = 4;
    double thickness = 1e-4;
};

using ConfigPtr = std::unique_ptr<pmhd_config, decltype(&pmhd_config_free)>;

// Status 1-3 are passed through; every other failure is a config/IO exit.
int exitFor(pmhd_status s) {
    return (s == PMHD_ERR_INVARIANT || s == PMHD_ERR_SOLVER) ? static_cast<int>(s) : (s == PMHD_OK ? 0 : 1);
}

int report(pmhd_status s) {
    std::cerr << "error: " << pmhd_last_error() << "\n";
    return exitFor(s);
}

std::string take(char* s) {
    std::string out = s ? s : "";
    pmhd_string_free(s);
    return out;
}

std::optional<ConfigPtr> load(const Globals& g, int& code) {
    if (g.config.empty()) {
        std::cerr << "error: --config is required\n";
        code = 1;
        return std::nullopt;
    }
    pmhd_config* raw = nullptr;
    if (pmhd_status s = pmhd_config_load(g.config.c_str(), &raw); s != PMHD_OK) {
        code = report(s);
        return std::nullopt;
    }
    ConfigPtr cfg(raw, pmhd_config_free);
    pmhd_status s = PMHD_OK;
    if (g.steps) s = pmhd_config_set_steps(cfg.get(), *g.steps);
    if (s == PMHD_OK && g.seed) s = pmhd_config_set_seed(cfg.get(), *g.seed);
    if (s == PMHD_OK && !g.outDir.empty()) s = pmhd_config_set_out_dir(cfg.get(), g.outDir.c_str());
    if (s != PMHD_OK) {
        code = report(s);
        return std::nullopt;
    }
    return cfg;
}

void printWarnings(const pmhd_config* cfg) {
    char* text = nullptr;
    if (pmhd_config_warnings(cfg, &text) == PMHD_OK) {
        const std::string w = take(text);
        std::size_t start = 0;
        while (start < w.size()) {
            const std::size_t end = w.find('\n', start);
            std::cerr << "warning: " << w.substr(start, end - start) << "\n";
            start = end == std::string::npos ? w.size() : end + 1;
        }
    }
}

int cmdValidate(const Globals& g) {
    int code = 0;
    auto cfg = load(g, code);
    if (!cfg) return code;
    printWarnings(cfg->get());
    char* text = nullptr;
    if (pmhd_status s = pmhd_config_normalized(cfg->get(), &text); s != PMHD_OK) return report(s);
    std::cout << take(text);
    return 0;
}

int cmdRun(const Globals& g) {
    int code = 0;
    auto cfg = load(g, code);
    if (!cfg) return code;
    pmhd_run_summary sum{};
    auto log = [](const char* line, void*) { std::cerr << line << "\n"; };
    const pmhd_status s = pmhd_run(cfg->get(), log, nullptr, &sum);
    if (s != PMHD_OK && sum.steps_done == 0 && sum.exit_code == 0) return report(s);
    std::printf("exit_code: %d\nsteps: %ld\ninitial_energy: %.17g\nworst_slack_ratio: %.17g\n"
                "max_div_b: %.17g\nmax_mass_drift: %.17g\n",
                sum.exit_code, sum.steps_done, sum.initial_energy, sum.worst_slack_ratio, sum.max_div_b,
                sum.max_mass_drift);
    if (s != PMHD_OK) std::cerr << "error: " << pmhd_last_error() << "\n";
    return exitFor(s);
}

int cmdNondim(const Globals& g) {
    int code = 0;
    auto cfg = load(g, code);
    if (!cfg) return code;
    char* text = nullptr;
    if (pmhd_status s = pmhd_nondim_report(cfg->get(), &text); s != PMHD_OK) return report(s);
    std::cout << take(text);
    return 0;
}

int cmdPillbox(const Globals& g, const PillboxArgs& a) {
    char* csv = nullptr;
    if (pmhd_status s = pmhd_pillbox_csv(a.firstSize, a.count, a.thickness, &csv); s != PMHD_OK) return report(s);
    const std::string text = take(csv);
    if (g.outDir.empty()) {
        std::cout << text;
        return 0;
    }
    std::error_code ec;
    std::filesystem::create_directories(g.outDir, ec);
    const auto path = std::filesystem::path(g.outDir) / "pillbox.csv";
    std::ofstream out(path);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write " << path.string() << "\n";
        return 1;
    }
    std::cerr << "wrote " << path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Penalized compressible MHD with rigid bodies"};
    app.set_version_flag("--version", std::string(pmhd_version()));
    app.require_subcommand(1);

    Globals g;
    app.add_option("--config", g.config, "INI configuration file");
    app.add_option("--out-dir", g.outDir, "Output directory (overrides [output] dir)");
    app.add_option("--steps-override", g.steps, "Number of steps (overrides [run] steps)")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "Seed for the initial-data noise (overrides [run] seed)");

    PillboxArgs pb;
    auto* validate = app.add_subcommand("validate", "Check a config and print it with defaults filled in");
    auto* run = app.add_subcommand("run", "Run a simulation and write its artifacts");
    auto* nondim = app.add_subcommand("nondim", "Report characteristic scales and approximation checks");
    auto* pillbox = app.add_subcommand("pillbox", "Interface-condition defect rate studies as CSV");
    pillbox->add_option("--first-size", pb.firstSize, "Largest pill-box size")->capture_default_str();
    pillbox->add_option("--count", pb.count, "Number of sizes, halving each time")->capture_default_str();
    pillbox->add_option("--thickness", pb.thickness, "Jump layer thickness")->capture_default_str();
    for (auto* sub : {validate, run, nondim, pillbox}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return cmdValidate(g);
    if (run->parsed()) return cmdRun(g);
    if (nondim->parsed()) return cmdNondim(g);
    return cmdPillbox(g, pb);
}
