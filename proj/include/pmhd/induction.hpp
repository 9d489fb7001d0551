#pragma once

#include "pmhd/scheme.hpp"

namespace pmhd {

/// Energy bookkeeping of one induction step. Rates are per unit time and are
/// multiplied by dt in the ledger.
struct InductionBudget {
    double magneticBefore = 0.0;
    double magneticAfter = 0.0;
    double resistive = 0.0;      // (1/(sigma mu^2)) ||w||^2
    double hyperResistive = 0.0; // (eps/mu) <A w, w>
    double curl4 = 0.0;          // (eps/mu^3) sum |w~|^2 w^2
    double source = 0.0;         // (1/(sigma mu)) <J, w>
    double transport = 0.0;      // (1/mu) <u x B_lag, w>
    double increment = 0.0;      // (1/(2 mu dt)) ||B^k - B^(k-1)||^2
};

struct InductionResult {
    MagneticState state;
    InductionBudget budget;
    int picardIterations = 0;
    bool picardConverged = true;
    /// True when Picard failed and the fully lagged nonlinearity was used.
    bool laggedFallback = false;
};

/// Implicit step for the potential: with psi = psi_b + phi and A = -Laplacian
/// (Dirichlet) on interior nodes,
///   (I/dt + A/(sigma mu) + eps A^2 + (eps/mu^2) diag|w~|^2 A) phi
///       = phi_prev/dt + (u x B_prev)_z + J/sigma.
/// `current` is the out-of-plane source at nodes (boundary values ignored).
InductionResult inductionStep(const MagneticState& prev, const VectorField& u,
                              const ScalarField& current, const SchemeParams& p);

/// (1/2mu) ||B||^2 with B = gradPerp(psi).
double magneticEnergy(const ScalarField& psi, double mu);

}  // namespace pmhd
