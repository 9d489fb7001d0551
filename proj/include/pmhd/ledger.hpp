#pragma once

#include "pmhd/induction.hpp"
#include "pmhd/mechanics.hpp"

namespace pmhd {

struct Forces {
    Point gravity{0.0, 0.0};
    ScalarField current;  // node-located out-of-plane source; empty means zero
};

/// Per-step energy accounting. Rates are per unit time; the inequality reads
///   E(after) + dt (dissipation + regularizers)
///     <= E(before) + dt (sources + coupling) + tolerance.
/// `coupling` is the mismatch between the Lorentz work of the mechanical
/// substeps and the transport work in the induction step; it vanishes when the
/// two use the same velocity and field.
struct EnergyLedger {
    double time = 0.0;
    double kinetic = 0.0;
    double internal = 0.0;
    double artificial = 0.0;
    double magnetic = 0.0;
    double dissipation = 0.0;
    double sources = 0.0;
    double regularizers = 0.0;
    double coupling = 0.0;
    double slack = 0.0;

    double total() const { return kinetic + internal + artificial + magnetic; }
};

struct StepBudget {
    MechanicalBudget mech;
    InductionBudget induction;
};

double totalEnergy(const MechanicalState& mech, const MagneticState& mag, const SchemeParams& p);

/// Ledger from step-integrated budgets (what the stepper reports).
EnergyLedger computeLedger(const MechanicalState& before, const MagneticState& magBefore,
                           const MechanicalState& after, const MagneticState& magAfter,
                           const SchemeParams& p, double dt, const StepBudget& budget);

/// Ledger with dissipation and sources evaluated at the `after` state.
EnergyLedger computeLedger(const MechanicalState& before, const MagneticState& magBefore,
                           const MechanicalState& after, const MagneticState& magAfter,
                           const SchemeParams& p, double dt, const Forces& forces);

}  // namespace pmhd
