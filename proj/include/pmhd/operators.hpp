#pragma once

#include "pmhd/fields.hpp"

namespace pmhd {

// Discrete differential operators on the MAC grid. All first-order operators
// are exact on affine fields at interior locations. Reductions sum in storage
// order so results are bit-reproducible.

/// Cell-centered scalar -> face gradient. Wall faces carry zero (no-flux).
VectorField grad(const ScalarField& f);

/// Face vector -> cell-centered divergence. Minus the adjoint of grad for
/// fields with zero normal wall values.
ScalarField div(const VectorField& v);

/// Node-located scalar curl dv_y/dx - dv_x/dy. Wall nodes use one-sided
/// second-order stencils.
ScalarField curl2d(const VectorField& v);

/// Node-located potential -> (d psi/dy, -d psi/dx) on faces. div of the result
/// vanishes identically.
VectorField gradPerp(const ScalarField& psi);

/// Cell-centered symmetric gradient 1/2 (grad u + grad u^T).
TensorField symgrad(const VectorField& u);

/// Five-point Laplacian of a cell-centered field with no-flux walls; equal to
/// div(grad(f)) by construction.
ScalarField laplacian(const ScalarField& f);

/// Cell inner product weighted by cell area.
double innerCells(const ScalarField& a, const ScalarField& b);
/// Face inner product weighted by dual-cell area (half weight on wall faces).
double innerFaces(const VectorField& a, const VectorField& b);
/// Node inner product over interior nodes, weighted by dx*dy.
double innerInteriorNodes(const ScalarField& a, const ScalarField& b);

/// Interpolate face components to cell centers (simple averages).
ScalarField faceXToCenter(const ScalarField& ux);
ScalarField faceYToCenter(const ScalarField& uy);

/// ||div v||_inf over all cells.
double maxAbsDivergence(const VectorField& v);

}  // namespace pmhd
