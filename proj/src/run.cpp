#include "pmhd/run.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/operators.hpp"
#include "pmhd/snapshot.hpp"
#include "pmhd/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pmhd {
namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string oneLine(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ';');
    return s;
}

void writeMetadata(const std::string& path, const RunConfig& cfg, const RunOutcome& out) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << normalizedConfig(cfg) << "\n[metadata]\n"
       << "format = pmhd-run v1\n"
       << "eps = " << g17(cfg.params.eps) << "\n"
       << "eps_over_dt = " << g17(cfg.params.eps / cfg.params.dt) << "\n"
       << "eps_source = " << (cfg.epsDefaulted ? "default (eps = dt)" : "config") << "\n"
       << "exit_code = " << out.exitCode << "\n"
       << "message = " << oneLine(out.message) << "\n"
       << "steps_completed = " << out.stepsDone << "\n"
       << "initial_energy = " << g17(out.initialEnergy) << "\n"
       << "worst_slack_ratio = " << g17(out.worstSlackRatio) << "\n"
       << "max_div_b = " << g17(out.maxDivB) << "\n"
       << "max_mass_drift = " << g17(out.maxMassDrift) << "\n";
    if (cfg.scales) {
        const CharacteristicScales s = cfg.scales->close();
        std::istringstream report(formatReport(s, checkAssumptions(s, cfg.scales->thresholds)));
        os << "\n[nondim]\n";
        std::string line;
        while (std::getline(report, line)) {
            const auto colon = line.find(": ");
            if (colon != std::string::npos) os << line.substr(0, colon) << " = " << line.substr(colon + 2) << "\n";
        }
    }
    if (!os) throw IoError("write to '" + path + "' failed");
}

}  // namespace

RunOutcome runSimulation(RunConfig cfg, const RunOptions& opts) {
    if (opts.steps) cfg.steps = *opts.steps;
    if (opts.outDir) cfg.outDir = *opts.outDir;
    if (opts.seed) cfg.seed = *opts.seed;
    auto log = [&](const std::string& s) {
        if (opts.log) opts.log(s);
    };

    RunOutcome out;
    out.outDir = cfg.outDir;
    try {
        std::filesystem::create_directories(cfg.outDir);
    } catch (const std::filesystem::filesystem_error& e) {
        out.exitCode = kExitConfig;
        out.message = std::string("cannot create output directory: ") + e.what();
        return out;
    }
    const std::filesystem::path dir(cfg.outDir);

    InitialData init;
    try {
        if (cfg.steps < 0) throw ConfigError("violated condition: steps >= 0 (got " + std::to_string(cfg.steps) + ")");
        init = buildInitialData(cfg);
    } catch (const Error& e) {
        out.exitCode = kExitConfig;
        out.message = e.what();
        return out;
    }
    for (const auto& w : init.warnings) log("warning: " + w);

    std::vector<int> ids;
    for (const auto& b : init.mech.bodies) ids.push_back(b.id);

    MechanicalState mech = init.mech;
    MagneticState mag = init.mag;
    out.initialEnergy = totalEnergy(mech, mag, cfg.params);
    const Grid& g = cfg.grid;
    double mass = mech.rho.sum() * g.cellArea();
    double energyScale = out.initialEnergy;

    try {
        TimeSeriesWriter ts((dir / "timeseries.csv").string(), ids);
        for (long k = 1; k <= cfg.steps; ++k) {
            StepResult r = stepCoupled(mech, mag, cfg.params, init.forces);
            energyScale = std::max(energyScale, r.ledger.total());
            const double theta = cfg.slackTolerance * (out.initialEnergy > 0.0 ? out.initialEnergy : energyScale);
            const double drift = mass > 0.0 ? std::abs(r.mass - mass) / mass : std::abs(r.mass - mass);
            ts.write(TimeSeriesRow::fromStep(k, r));
            out.stepsDone = k;
            out.maxDivB = std::max(out.maxDivB, r.divB);
            out.maxMassDrift = std::max(out.maxMassDrift, drift);
            if (theta > 0.0)
                out.worstSlackRatio = std::max(out.worstSlackRatio, r.ledger.slack / theta);
            else if (r.ledger.slack > 0.0)
                out.worstSlackRatio = std::numeric_limits<double>::infinity();
            mech = std::move(r.mech);
            mag = std::move(r.mag);
            mass = r.mass;
            if (r.ledger.slack > theta)
                throw InvariantError("energy ledger slack " + g17(r.ledger.slack) + " exceeds tolerance " + g17(theta) +
                                     " at step " + std::to_string(k));
            if (r.divB > kDivBLimit)
                throw InvariantError("max |div B| = " + g17(r.divB) + " exceeds " + g17(kDivBLimit) + " at step " +
                                     std::to_string(k));
            if (drift > kMassDriftPerStep)
                throw InvariantError("relative mass drift " + g17(drift) + " exceeds " + g17(kMassDriftPerStep) +
                                     " at step " + std::to_string(k));
            if (r.inductionFlagged) log("warning: step " + std::to_string(k) + ": induction used the lagged fallback");
            if (k % 10 == 0 || k == cfg.steps)
                log("step " + std::to_string(k) + "/" + std::to_string(cfg.steps) + " t = " + g17(mech.time) +
                    " E = " + g17(r.ledger.total()) + " slack = " + g17(r.ledger.slack));
        }
        ts.flush();
        out.message = "completed " + std::to_string(out.stepsDone) + " steps";
    } catch (const InvariantError& e) {
        out.exitCode = kExitInvariant;
        out.message = std::string("invariant violated: ") + e.what();
    } catch (const SolverError& e) {
        out.exitCode = kExitSolver;
        out.message = std::string("solver failure: ") + e.what();
    } catch (const IoError& e) {
        out.exitCode = kExitConfig;
        out.message = std::string("output failure: ") + e.what();
    }

    try {
        if (cfg.snapshots) {
            writeSnapshotFile((dir / "rho.txt").string(), mech.rho);
            writeSnapshotFile((dir / "u_x.txt").string(), mech.u.x());
            writeSnapshotFile((dir / "u_y.txt").string(), mech.u.y());
            writeSnapshotFile((dir / "psi.txt").string(), mag.psi);
        }
        writeMetadata((dir / "metadata.ini").string(), cfg, out);
    } catch (const Error& e) {
        if (out.exitCode == kExitOk) {
            out.exitCode = kExitConfig;
            out.message = std::string("output failure: ") + e.what();
        }
    }
    return out;
}

}  // namespace pmhd
