#pragma once

#include "pmhd/ledger.hpp"

#include <vector>

namespace pmhd {

struct BodyReport {
    int id = 0;
    Point X{0.0, 0.0};
    double angle = 0.0;
    Point V{0.0, 0.0};
    double w = 0.0;
    double rigidity = 0.0;
};

struct StepResult {
    MechanicalState mech;
    MagneticState mag;
    EnergyLedger ledger;
    std::vector<BodyReport> bodies;
    double mass = 0.0;
    double divB = 0.0;
    int mechPicard = 0;
    int inductionPicard = 0;
    bool inductionFlagged = false;
};

/// One outer step of the hybrid scheme: mechanical substeps with the field
/// lagged at k-1, rigid projection and body advancement, then the induction
/// step with the end-of-interval velocity.
StepResult stepCoupled(const MechanicalState& mech, const MagneticState& mag, const SchemeParams& p,
                       const Forces& forces);

}  // namespace pmhd
