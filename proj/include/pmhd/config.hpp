#pragma once

#include "pmhd/nondim.hpp"
#include "pmhd/stepper.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pmhd {

struct InitialSpec {
    double rho0 = 1.0;
    /// rest | rigid (bodies move with their V, w) | vortex (amplitude u0)
    std::string velocity = "rest";
    double u0 = 0.0;
    /// none | sine (psi = b0 sin sin) | linear (psi = b0 y, uniform B)
    std::string field = "none";
    double b0 = 0.0;
    /// Box [x0, x1] x [y0, y1] where the initial density is zero.
    std::optional<std::array<double, 4>> vacuum;
    /// Relative uniform density perturbation drawn from the run seed.
    double noise = 0.0;
};

struct CurrentSpec {
    /// none | uniform (constant node value)
    std::string kind = "none";
    double value = 0.0;
};

struct ScalesSpec {
    bool fromVelocity = false;
    double xbar = 0.0, tbar = 0.0, Bbar = 0.0, ubar = 0.0, jbar = 0.0;
    Material material;
    FreeScales free;
    AssumptionThresholds thresholds;

    CharacteristicScales close() const;
};

struct RunConfig {
    Grid grid;
    /// Domain lengths as given (grid spacing is derived from them).
    double lx = 1.0, ly = 1.0;
    SchemeParams params;
    bool epsDefaulted = true;
    std::vector<RigidBody> bodies;
    /// Density inside each body; NaN keeps the fluid density.
    std::vector<double> bodyDensity;
    /// Initial angles as given, so the normalized echo reproduces them exactly.
    std::vector<double> bodyAngle;
    InitialSpec initial;
    Point gravity{0.0, 0.0};
    CurrentSpec current;
    std::optional<ScalesSpec> scales;
    std::string outDir = "out";
    long steps = 10;
    std::uint64_t seed = 0;
    /// Allowed ledger slack relative to the initial total energy.
    double slackTolerance = 1e-8;
    /// Write final field snapshots.
    bool snapshots = true;
    std::vector<std::string> warnings;
};

struct InitialData {
    MechanicalState mech;
    MagneticState mag;
    Forces forces;
    std::vector<std::string> warnings;
};

/// Parse INI text. Throws ConfigError listing every problem, one per line.
RunConfig parseConfig(const std::string& text);
/// Read and parse a file (IoError if unreadable), then check the initial data.
RunConfig validateConfig(const std::string& path);
/// Initial states and forces. Momentum is zeroed where the density is zero;
/// that is reported in `warnings`.
InitialData buildInitialData(const RunConfig& cfg);
/// INI text with every default filled in; parses back to the same config.
std::string normalizedConfig(const RunConfig& cfg);

}  // namespace pmhd
