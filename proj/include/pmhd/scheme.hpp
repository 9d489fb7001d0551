#pragma once

#include "pmhd/fields.hpp"
#include "pmhd/geometry.hpp"

#include <string>
#include <vector>

namespace pmhd {

struct SchemeParams {
    double nu = 0.1;
    double lambda = 0.0;
    double a = 1.0;
    double gamma = 2.0;
    double sigma = 1.0;
    double mu = 1.0;
    double dt = 0.01;
    double m = 0.0;
    double eps = 0.0;
    double alpha = 0.0;
    double beta = 5.0;
    /// Mollifier width for bodies that do not set their own.
    double delta = 0.0;
    double picardTol = 1e-10;
    int picardMax = 60;
    int innerSubsteps = 4;
    /// Pin u = 0 and rho; only the induction equation evolves.
    bool freezeMechanics = false;

    /// Throws ConfigError naming the first violated admissibility condition.
    void validate() const;
    /// All violated conditions, empty when admissible.
    std::vector<std::string> violations() const;
};

struct MechanicalState {
    ScalarField rho;
    VectorField u;
    std::vector<RigidBody> bodies;
    double time = 0.0;
};

struct MagneticState {
    ScalarField psi;  // node-located potential, constant on the boundary
    long k = 0;

    VectorField B() const;
    /// Common boundary value of psi.
    double boundaryValue() const { return psi(0, 0); }
    /// Largest deviation of boundary psi from its corner value.
    double boundaryVariation() const;
};

/// a rho^gamma pointwise; negative density is an invariant violation.
ScalarField pressure(const ScalarField& rho, double a, double gamma);

/// Full pressure a rho^gamma + alpha rho^beta used by the mechanical step.
double pressureLaw(double rho, const SchemeParams& p);
/// Derivative of the internal energy density, a gamma/(gamma-1) rho^(gamma-1) + ...
double enthalpyLaw(double rho, const SchemeParams& p);
double internalEnergyDensity(double rho, const SchemeParams& p);
double artificialEnergyDensity(double rho, const SchemeParams& p);

struct ViscosityFields {
    ScalarField nu;
    ScalarField lambda;
};

/// nu + m H(chi), lambda + m H(chi) pointwise.
ViscosityFields variableViscosity(const ScalarField& chi, double nu, double lambda, double m);

/// Out-of-plane current curl B at interior nodes (zero on boundary nodes).
ScalarField interiorCurl(const ScalarField& psi);

/// (1/mu) curl B x B on faces. Built as the adjoint of the transport term so
/// that <F, u> = -(1/mu) <transport(u, B), curl B> exactly.
VectorField lorentzForce(const ScalarField& psi, double mu);

/// (u x B)_z = u1 B2 - u2 B1 at interior nodes from face averages.
ScalarField transportTerm(const VectorField& u, const VectorField& B);

}  // namespace pmhd
