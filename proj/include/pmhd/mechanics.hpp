#pragma once

#include "pmhd/scheme.hpp"

#include <memory>

namespace pmhd {

/// Time-integrated energy exchanges of the mechanical substeps in one outer
/// step (each entry already multiplied by its substep length).
struct MechanicalBudget {
    double viscous = 0.0;      // int 2 nu(chi)|D u|^2 + lambda(chi)|div u|^2
    double regularizer = 0.0;  // eps |u|^2 u work + eps density-diffusion dissipation
    double gravityWork = 0.0;  // int rho g . u
    double lorentzWork = 0.0;  // int F_L . u
    int substeps = 0;
    int maxPicard = 0;
};

/// Discrete kinetic energy sum over interior faces of 1/2 rho_face |u|^2 dxdy,
/// with rho_face the mean of the two adjacent cells.
double kineticEnergy(const ScalarField& rho, const VectorField& u);
double internalEnergy(const ScalarField& rho, const SchemeParams& p);
double artificialEnergy(const ScalarField& rho, const SchemeParams& p);

/// Quadratic viscous form u^T K u of the discrete stress operator with the
/// penalized viscosities of the given bodies.
double viscousDissipationRate(const VectorField& u, const std::vector<RigidBody>& bodies,
                              const SchemeParams& p);

/// One implicit substep of the regularized compressible equations. Continuity
/// (upwind + eps diffusion) and momentum (upwind convection on dual cells,
/// pressure, penalized viscosity, eps|u|^2 u with lagged |u|^2) are coupled by
/// Picard iteration. `lorentz` is the force from the lagged field.
/// Factorizations carried between substeps of one outer step. Later solves
/// use them as preconditioners and refactor only when that stalls.
class MechanicalWorkspace {
public:
    MechanicalWorkspace();
    ~MechanicalWorkspace();
    MechanicalWorkspace(const MechanicalWorkspace&) = delete;
    MechanicalWorkspace& operator=(const MechanicalWorkspace&) = delete;

    struct Impl;
    Impl& impl() { return *impl_; }

private:
    std::unique_ptr<Impl> impl_;
};

MechanicalState mechanicalSubstep(const MechanicalState& s, const VectorField& lorentz, Point gravity,
                                  const SchemeParams& p, double dtInner,
                                  MechanicalBudget* budget = nullptr, MechanicalWorkspace* workspace = nullptr);

/// Largest substep allowed by |u| dt <= 0.5 min(dx, dy).
double cflLimit(const VectorField& u);

}  // namespace pmhd
