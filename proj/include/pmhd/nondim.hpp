#pragma once

#include "pmhd/ledger.hpp"

#include <string>

namespace pmhd {

struct Material {
    double mu0 = 4e-7 * 3.14159265358979323846;
    double eps0 = 8.8541878128e-12;
    double mur = 1.0;
    double epsr = 1.0;
    double sigma = 1.0;

    double mu() const { return mu0 * mur; }
    double eps() const { return eps0 * epsr; }
};

/// Scales with no closure relation; zero means "not supplied".
struct FreeScales {
    double rhobar = 0.0;
    double pbar = 0.0;
    double gbar = 0.0;
    double Hbar = 0.0;
    double Dbar = 0.0;
};

struct CharacteristicScales {
    double xbar = 0.0, tbar = 0.0, ubar = 0.0;
    double rhobar = 0.0, pbar = 0.0, gbar = 0.0;
    double Bbar = 0.0, Ebar = 0.0, Hbar = 0.0, Dbar = 0.0, jbar = 0.0, rhocbar = 0.0;
    Material material;

    double c() const;
};

/// Closure from (length, time, magnetic field).
CharacteristicScales closeScales(double xbar, double tbar, double Bbar, const Material& mat,
                                 const FreeScales& free = {});
/// Alternate closure from (length, velocity, current density); yields the same closed set.
CharacteristicScales closeScalesFromVelocity(double xbar, double ubar, double jbar, const Material& mat,
                                             const FreeScales& free = {});

enum class Verdict { Holds, Marginal, Violated };
std::string toString(Verdict v);

struct AssumptionThresholds {
    double speedHolds = 1e-3;
    double speedMarginal = 1e-1;
    double materialHolds = 0.05;
    double materialMarginal = 0.2;
};

struct ApproximationReport {
    double ratioUC = 0.0;
    double displacementRatio = 0.0;
    double murEpsr = 0.0;
    Verdict speed = Verdict::Holds;
    Verdict material = Verdict::Holds;
    AssumptionThresholds thresholds;
};

double displacementCurrentRatio(const CharacteristicScales& s);
ApproximationReport checkAssumptions(const CharacteristicScales& s, const AssumptionThresholds& t = {});
/// "key: value" lines covering every scale and verdict.
std::string formatReport(const CharacteristicScales& s, const ApproximationReport& r);

enum class Quantity {
    Length, Time, Velocity, Density, Pressure, Gravity,
    MagneticField, ElectricField, HField, DField, CurrentDensity, ChargeDensity
};

/// Throws ArgumentError if the scale for q was not supplied.
double scaleOf(const CharacteristicScales& s, Quantity q);
ScalarField nondimensionalize(const ScalarField& f, Quantity q, const CharacteristicScales& s);
ScalarField redimensionalize(const ScalarField& f, Quantity q, const CharacteristicScales& s);
VectorField nondimensionalize(const VectorField& f, Quantity q, const CharacteristicScales& s);
VectorField redimensionalize(const VectorField& f, Quantity q, const CharacteristicScales& s);

/// The scheme in dimensionless variables. Coefficients are mapped so that the
/// discrete equations keep their form; needs rhobar. The regularizer eps
/// has no single consistent scaling and is rejected unless zero.
struct DimensionlessProblem {
    Grid grid;
    SchemeParams params;
    MechanicalState mech;
    MagneticState mag;
    Forces forces;
};

DimensionlessProblem nondimensionalizeProblem(const Grid& grid, const SchemeParams& p, const MechanicalState& mech,
                                              const MagneticState& mag, const Forces& forces,
                                              const CharacteristicScales& s);
MechanicalState redimensionalizeMechanical(const MechanicalState& m, const Grid& dimGrid, const CharacteristicScales& s);
MagneticState redimensionalizeMagnetic(const MagneticState& m, const Grid& dimGrid, const CharacteristicScales& s);
/// Energy per unit depth: rhobar * ubar^2 * xbar^2.
double energyScale(const CharacteristicScales& s);

}  // namespace pmhd
