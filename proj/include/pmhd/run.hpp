#pragma once

#include "pmhd/config.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace pmhd {

enum ExitStatus { kExitOk = 0, kExitConfig = 1, kExitInvariant = 2, kExitSolver = 3 };

struct RunOptions {
    std::optional<long> steps;
    std::optional<std::string> outDir;
    std::optional<std::uint64_t> seed;
    /// Progress and warning lines; silent when empty.
    std::function<void(const std::string&)> log;
};

struct RunOutcome {
    int exitCode = kExitOk;
    std::string message;
    long stepsDone = 0;
    double initialEnergy = 0.0;
    /// Largest slack / tolerance ratio seen (<= 1 when the ledger holds).
    double worstSlackRatio = 0.0;
    double maxDivB = 0.0;
    double maxMassDrift = 0.0;
    std::string outDir;
};

/// Per-step mass drift allowed before the run is stopped as an invariant violation.
inline constexpr double kMassDriftPerStep = 1e-10;
inline constexpr double kDivBLimit = 1e-12;

/// Steps the configured problem and writes timeseries.csv, metadata.ini and
/// (optionally) final snapshots into the output directory. The metadata file
/// is itself a valid config that reproduces the run.
RunOutcome runSimulation(RunConfig cfg, const RunOptions& opts = {});

}  // namespace pmhd
