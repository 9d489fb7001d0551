#include "pmhd/ledger.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/operators.hpp"

namespace pmhd {
namespace {

void requireSameGrid(const MechanicalState& a, const MagneticState& am, const MechanicalState& b,
                     const MagneticState& bm) {
    const Grid& g = a.rho.grid();
    if (!(b.rho.grid() == g) || !(a.u.grid() == g) || !(b.u.grid() == g) || !(am.psi.grid() == g) ||
        !(bm.psi.grid() == g)) {
        throw ArgumentError("computeLedger: states live on different grids");
    }
}

EnergyLedger energiesOf(const MechanicalState& s, const MagneticState& m, const SchemeParams& p) {
    EnergyLedger l;
    l.time = s.time;
    l.kinetic = kineticEnergy(s.rho, s.u);
    l.internal = internalEnergy(s.rho, p);
    l.artificial = artificialEnergy(s.rho, p);
    l.magnetic = magneticEnergy(m.psi, p.mu);
    return l;
}

void closeLedger(EnergyLedger& l, double before, double dt) {
    l.slack = l.total() + dt * (l.dissipation + l.regularizers) - before - dt * (l.sources + l.coupling);
}

}  // namespace

double totalEnergy(const MechanicalState& mech, const MagneticState& mag, const SchemeParams& p) {
    return energiesOf(mech, mag, p).total();
}

EnergyLedger computeLedger(const MechanicalState& before, const MagneticState& magBefore,
                           const MechanicalState& after, const MagneticState& magAfter,
                           const SchemeParams& p, double dt, const StepBudget& b) {
    requireSameGrid(before, magBefore, after, magAfter);
    EnergyLedger l = energiesOf(after, magAfter, p);
    const auto& m = b.mech;
    const auto& i = b.induction;
    l.dissipation = m.viscous / dt + i.resistive;
    l.regularizers = m.regularizer / dt + i.hyperResistive + i.curl4;
    l.sources = m.gravityWork / dt + i.source;
    l.coupling = m.lorentzWork / dt + i.transport;
    closeLedger(l, totalEnergy(before, magBefore, p), dt);
    return l;
}

EnergyLedger computeLedger(const MechanicalState& before, const MagneticState& magBefore,
                           const MechanicalState& after, const MagneticState& magAfter,
                           const SchemeParams& p, double dt, const Forces& f) {
    requireSameGrid(before, magBefore, after, magAfter);
    const Grid& g = after.rho.grid();
    EnergyLedger l = energiesOf(after, magAfter, p);
    const ScalarField w = interiorCurl(magAfter.psi);
    const double area = g.cellArea();
    l.dissipation = viscousDissipationRate(after.u, after.bodies, p) +
                    innerInteriorNodes(w, w) / (p.sigma * p.mu * p.mu);
    double grav = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            grav += 0.5 * (after.rho(i - 1, j) + after.rho(i, j)) * f.gravity[0] * after.u.x()(i, j);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            grav += 0.5 * (after.rho(i, j - 1) + after.rho(i, j)) * f.gravity[1] * after.u.y()(i, j);
    l.sources = grav * area;
    if (f.current.size() > 0) l.sources += innerInteriorNodes(f.current, w) / (p.sigma * p.mu);
    if (p.eps > 0.0) {
        double w4 = 0.0, hyper = 0.0;
        for (int j = 1; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i) {
                w4 += w(i, j) * w(i, j) * w(i, j) * w(i, j);
                const double lap = -((w(i + 1, j) - 2 * w(i, j) + w(i - 1, j)) / (g.dx * g.dx) +
                                     (w(i, j + 1) - 2 * w(i, j) + w(i, j - 1)) / (g.dy * g.dy));
                hyper += lap * w(i, j);
            }
        l.regularizers = area * p.eps * (hyper / p.mu + w4 / (p.mu * p.mu * p.mu));
    }
    l.coupling = innerFaces(lorentzForce(magAfter.psi, p.mu), after.u) +
                 innerInteriorNodes(transportTerm(after.u, magAfter.B()), w) / p.mu;
    closeLedger(l, totalEnergy(before, magBefore, p), dt);
    return l;
}

}  // namespace pmhd
