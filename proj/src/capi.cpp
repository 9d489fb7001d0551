#include "pmhd/pmhd.h"

#include "pmhd/config.hpp"
#include "pmhd/errors.hpp"
#include "pmhd/nondim.hpp"
#include "pmhd/pillbox.hpp"
#include "pmhd/run.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

struct pmhd_config {
    pmhd::RunConfig cfg;
};

namespace {

thread_local std::string lastError;

pmhd_status fail(pmhd_status s, const std::string& msg) {
    lastError = msg;
    return s;
}

// Runs fn, translating exceptions into status codes and the thread's last error.
template <class F>
pmhd_status guarded(F&& fn) {
    try {
        lastError.clear();
        return fn();
    } catch (const pmhd::Error& e) {
        return fail(static_cast<pmhd_status>(static_cast<int>(e.kind())), e.what());
    } catch (const std::bad_alloc&) {
        return fail(PMHD_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(PMHD_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(PMHD_ERR_INTERNAL, "unknown error");
    }
}

char* copyString(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

extern "C" {

const char* pmhd_version(void) { return PMHD_VERSION; }

const char* pmhd_last_error(void) { return lastError.c_str(); }

void pmhd_string_free(char* s) { std::free(s); }

pmhd_status pmhd_config_load(const char* path, pmhd_config** out) {
    if (!path || !out) return fail(PMHD_ERR_ARGUMENT, "pmhd_config_load: null argument");
    return guarded([&] {
        *out = new pmhd_config{pmhd::validateConfig(path)};
        return PMHD_OK;
    });
}

pmhd_status pmhd_config_parse(const char* text, pmhd_config** out) {
    if (!text || !out) return fail(PMHD_ERR_ARGUMENT, "pmhd_config_parse: null argument");
    return guarded([&] {
        pmhd::RunConfig cfg = pmhd::parseConfig(text);
        cfg.warnings = pmhd::buildInitialData(cfg).warnings;
        *out = new pmhd_config{std::move(cfg)};
        return PMHD_OK;
    });
}

void pmhd_config_free(pmhd_config* cfg) { delete cfg; }

pmhd_status pmhd_config_set_steps(pmhd_config* cfg, long steps) {
    if (!cfg) return fail(PMHD_ERR_ARGUMENT, "pmhd_config_set_steps: null config");
    if (steps < 0) return fail(PMHD_ERR_ARGUMENT, "steps must be >= 0 (got " + std::to_string(steps) + ")");
    cfg->cfg.steps = steps;
    lastError.clear();
    return PMHD_OK;
}

pmhd_status pmhd_config_set_seed(pmhd_config* cfg, uint64_t seed) {
    if (!cfg) return fail(PMHD_ERR_ARGUMENT, "pmhd_config_set_seed: null config");
    // The seed feeds the initial noise, so the initial data is rebuilt.
    return guarded([&] {
        cfg->cfg.seed = seed;
        cfg->cfg.warnings = pmhd::buildInitialData(cfg->cfg).warnings;
        return PMHD_OK;
    });
}

pmhd_status pmhd_config_set_out_dir(pmhd_config* cfg, const char* dir) {
    if (!cfg || !dir) return fail(PMHD_ERR_ARGUMENT, "pmhd_config_set_out_dir: null argument");
    if (!*dir) return fail(PMHD_ERR_ARGUMENT, "output directory must not be empty");
    return guarded([&] {
        cfg->cfg.outDir = dir;
        return PMHD_OK;
    });
}

pmhd_status pmhd_config_normalized(const pmhd_config* cfg, char** text) {
    if (!cfg || !text) return fail(PMHD_ERR_ARGUMENT, "pmhd_config_normalized: null argument");
    return guarded([&] {
        *text = copyString(pmhd::normalizedConfig(cfg->cfg));
        return PMHD_OK;
    });
}

pmhd_status pmhd_config_warnings(const pmhd_config* cfg, char** text) {
    if (!cfg || !text) return fail(PMHD_ERR_ARGUMENT, "pmhd_config_warnings: null argument");
    return guarded([&] {
        std::string all;
        for (const auto& w : cfg->cfg.warnings) all += w + "\n";
        *text = copyString(all);
        return PMHD_OK;
    });
}

pmhd_status pmhd_run(const pmhd_config* cfg, pmhd_log_fn log, void* user, pmhd_run_summary* summary) {
    if (!cfg) return fail(PMHD_ERR_ARGUMENT, "pmhd_run: null config");
    return guarded([&] {
        pmhd::RunOptions opts;
        if (log) opts.log = [log, user](const std::string& line) { log(line.c_str(), user); };
        const pmhd::RunOutcome r = pmhd::runSimulation(cfg->cfg, opts);
        if (summary) {
            summary->exit_code = r.exitCode;
            summary->steps_done = r.stepsDone;
            summary->initial_energy = r.initialEnergy;
            summary->worst_slack_ratio = r.worstSlackRatio;
            summary->max_div_b = r.maxDivB;
            summary->max_mass_drift = r.maxMassDrift;
        }
        if (r.exitCode != pmhd::kExitOk) return fail(static_cast<pmhd_status>(r.exitCode), r.message);
        return PMHD_OK;
    });
}

pmhd_status pmhd_nondim_report(const pmhd_config* cfg, char** text) {
    if (!cfg || !text) return fail(PMHD_ERR_ARGUMENT, "pmhd_nondim_report: null argument");
    return guarded([&] {
        const pmhd::RunConfig& c = cfg->cfg;
        if (!c.scales) throw pmhd::ConfigError("nondim report needs a [scales] section");
        const pmhd::CharacteristicScales s = c.scales->close();
        std::ostringstream os;
        os << pmhd::formatReport(s, pmhd::checkAssumptions(s, c.scales->thresholds));
        os << "energy_scale: " << g17(pmhd::energyScale(s)) << "\n";
        if (c.params.eps != 0.0) {
            os << "dimensionless_parameters: unavailable (the eps regularization has no dimensionless form; set eps = 0)\n";
        } else {
            const pmhd::InitialData init = pmhd::buildInitialData(c);
            const pmhd::DimensionlessProblem d =
                pmhd::nondimensionalizeProblem(c.grid, c.params, init.mech, init.mag, init.forces, s);
            const pmhd::SchemeParams& p = d.params;
            os << "dimensionless_dx: " << g17(d.grid.dx) << "\n"
               << "dimensionless_dy: " << g17(d.grid.dy) << "\n"
               << "dimensionless_nu: " << g17(p.nu) << "\n"
               << "dimensionless_lambda: " << g17(p.lambda) << "\n"
               << "dimensionless_a: " << g17(p.a) << "\n"
               << "dimensionless_alpha: " << g17(p.alpha) << "\n"
               << "dimensionless_sigma: " << g17(p.sigma) << "\n"
               << "dimensionless_mu: " << g17(p.mu) << "\n"
               << "dimensionless_m: " << g17(p.m) << "\n"
               << "dimensionless_dt: " << g17(p.dt) << "\n";
        }
        *text = copyString(os.str());
        return PMHD_OK;
    });
}

pmhd_status pmhd_pillbox_csv(double first_size, int count, double thickness, char** csv) {
    if (!csv) return fail(PMHD_ERR_ARGUMENT, "pmhd_pillbox_csv: null argument");
    return guarded([&] {
        if (!(first_size > 0.0) || !(thickness > 0.0) || count < 4)
            throw pmhd::ArgumentError("pillbox study needs first_size > 0, thickness > 0 and at least 4 sizes");
        const auto rows = pmhd::runPillboxStudies(pmhd::geometricSizes(first_size, 0.5, count), thickness);
        std::ostringstream os;
        os << "# pmhd-pillbox v1\nstudy,case,size,defect,slope,identically_satisfied\n";
        for (const auto& r : rows)
            os << r.study << ',' << r.name << ',' << g17(r.size) << ',' << g17(r.defect) << ','
               << (r.result.identicallySatisfied ? std::string("nan") : g17(r.result.slope)) << ','
               << (r.result.identicallySatisfied ? 1 : 0) << '\n';
        *csv = copyString(os.str());
        return PMHD_OK;
    });
}

}  // extern "C"
