#include "pmhd/induction.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/operators.hpp"
#include "reused_lu.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>

namespace pmhd {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct NodeIndex {
    int nx, ny;
    int count() const { return (nx - 1) * (ny - 1); }
    int operator()(int i, int j) const { return (j - 1) * (nx - 1) + (i - 1); }
};

SpMat negativeLaplacian(const Grid& g) {
    const NodeIndex idx{g.nx, g.ny};
    const double ix2 = 1.0 / (g.dx * g.dx), iy2 = 1.0 / (g.dy * g.dy);
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(5 * idx.count());
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            const int r = idx(i, j);
            t.emplace_back(r, r, 2 * ix2 + 2 * iy2);
            if (i > 1) t.emplace_back(r, idx(i - 1, j), -ix2);
            if (i < g.nx - 1) t.emplace_back(r, idx(i + 1, j), -ix2);
            if (j > 1) t.emplace_back(r, idx(i, j - 1), -iy2);
            if (j < g.ny - 1) t.emplace_back(r, idx(i, j + 1), -iy2);
        }
    SpMat a(idx.count(), idx.count());
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

Vec interiorValues(const ScalarField& f, double shift = 0.0) {
    const Grid& g = f.grid();
    const NodeIndex idx{g.nx, g.ny};
    Vec v(idx.count());
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) v[idx(i, j)] = f(i, j) - shift;
    return v;
}

Vec solve(detail::ReusedLU& lu, const SpMat& m, const Vec& rhs, const Vec& guess) {
    const Vec x = lu.solve(m, rhs, guess, "induction step");
    const double res = (m * x - rhs).norm();
    if (!(res <= 1e-9 * std::max(1.0, rhs.norm())))
        throw SolverError("induction step: residual " + std::to_string(res) + " after linear solve");
    return x;
}

}  // namespace

double magneticEnergy(const ScalarField& psi, double mu) {
    const VectorField b = gradPerp(psi);
    return innerFaces(b, b) / (2.0 * mu);
}

InductionResult inductionStep(const MagneticState& prev, const VectorField& u,
                              const ScalarField& current, const SchemeParams& p) {
    const Grid& g = prev.psi.grid();
    if (!(u.grid() == g) || !(current.grid() == g) || current.location() != Location::Node)
        throw ArgumentError("inductionStep: fields must share the grid; current must be node-located");
    if (prev.boundaryVariation() > 1e-12 * std::max(1.0, prev.psi.maxAbs()))
        throw InvariantError("inductionStep: psi is not constant on the boundary (B . n = 0 violated)");

    const double psiB = prev.boundaryValue();
    const double cellA = g.cellArea();
    const SpMat a = negativeLaplacian(g);
    const int n = static_cast<int>(a.rows());

    const VectorField bPrev = prev.B();
    const Vec phiPrev = interiorValues(prev.psi, psiB);
    const Vec transport = interiorValues(transportTerm(u, bPrev));
    const Vec source = interiorValues(current);
    const Vec rhs = phiPrev / p.dt + transport + source / p.sigma;

    SpMat ident(n, n);
    ident.setIdentity();
    SpMat base = ident / p.dt + a / (p.sigma * p.mu);
    if (p.eps > 0.0) base += p.eps * SpMat(a * a);

    const Vec omegaPrev = a * phiPrev;
    auto systemWith = [&](const Vec& w2) -> SpMat {
        if (p.eps == 0.0) return base;
        SpMat wa = (p.eps / (p.mu * p.mu)) * w2.asDiagonal() * a;
        return base + wa;
    };

    InductionResult out;
    Vec w2 = omegaPrev.cwiseProduct(omegaPrev);
    detail::ReusedLU lu;
    Vec phi;
    if (p.eps == 0.0) {
        phi = solve(lu, base, rhs, phiPrev);
        out.picardIterations = 1;
    } else {
        Vec last = phiPrev;
        bool converged = false;
        for (int it = 1; it <= p.picardMax; ++it) {
            phi = solve(lu, systemWith(w2), rhs, last);
            out.picardIterations = it;
            if (it > 1) {
                const double diff = (phi - last).lpNorm<Eigen::Infinity>();
                if (diff <= p.picardTol * std::max(phi.lpNorm<Eigen::Infinity>(), 1e-300)) {
                    converged = true;
                    break;
                }
            }
            last = phi;
            const Vec om = a * phi;
            w2 = om.cwiseProduct(om);
        }
        if (!converged) {
            out.picardConverged = false;
            out.laggedFallback = true;
            w2 = omegaPrev.cwiseProduct(omegaPrev);
            phi = solve(lu, systemWith(w2), rhs, phiPrev);
        }
    }

    MagneticState next{ScalarField(g, Location::Node, psiB), prev.k + 1};
    const NodeIndex idx{g.nx, g.ny};
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) next.psi(i, j) = psiB + phi[idx(i, j)];

    const Vec omega = a * phi;
    const Vec dphi = phi - phiPrev;
    InductionBudget& bud = out.budget;
    bud.magneticBefore = magneticEnergy(prev.psi, p.mu);
    bud.magneticAfter = magneticEnergy(next.psi, p.mu);
    bud.resistive = cellA * omega.squaredNorm() / (p.sigma * p.mu * p.mu);
    bud.hyperResistive = p.eps == 0.0 ? 0.0 : cellA * p.eps / p.mu * omega.dot(a * omega);
    bud.curl4 = p.eps == 0.0 ? 0.0 : cellA * p.eps / (p.mu * p.mu * p.mu) * w2.dot(omega.cwiseProduct(omega));
    bud.source = cellA * source.dot(omega) / (p.sigma * p.mu);
    bud.transport = cellA * transport.dot(omega) / p.mu;
    bud.increment = cellA * dphi.dot(a * dphi) / (2.0 * p.mu * p.dt);
    out.state = std::move(next);
    return out;
}

}  // namespace pmhd
