#include "pmhd/stepper.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/operators.hpp"

namespace pmhd {

StepResult stepCoupled(const MechanicalState& mech, const MagneticState& mag, const SchemeParams& p,
                       const Forces& forces) {
    const Grid& g = mech.rho.grid();
    StepBudget budget;
    MechanicalState s = mech;

    if (p.freezeMechanics) {
        s.time = mech.time + p.dt;
    } else {
        const VectorField lorentz = lorentzForce(mag.psi, p.mu);
        const double dtInner = p.dt / p.innerSubsteps;
        MechanicalWorkspace ws;
        for (int k = 0; k < p.innerSubsteps; ++k)
            s = mechanicalSubstep(s, lorentz, forces.gravity, p, dtInner, &budget.mech, &ws);
        s.time = mech.time + p.dt;

        for (auto& body : s.bodies) {
            const RigidVelocity rv = extractRigidVelocity(s.rho, s.u, body);
            body = advanceFlowMap(body, rv.V, rv.w, p.dt);
        }
        if (!s.bodies.empty()) {
            try {
                checkBodyConfiguration(g, s.bodies);
            } catch (const InvariantError& e) {
                throw InvariantError(std::string("step refused: ") + e.what());
            }
        }
    }

    const ScalarField current = forces.current.size() > 0 ? forces.current : ScalarField(g, Location::Node);
    const InductionResult ind = inductionStep(mag, s.u, current, p);
    budget.induction = ind.budget;

    StepResult r;
    r.ledger = computeLedger(mech, mag, s, ind.state, p, p.dt, budget);
    r.mass = s.rho.sum() * g.cellArea();
    r.divB = maxAbsDivergence(ind.state.B());
    r.mechPicard = budget.mech.maxPicard;
    r.inductionPicard = ind.picardIterations;
    r.inductionFlagged = ind.laggedFallback;
    for (const auto& body : s.bodies) {
        BodyReport br;
        br.id = body.id;
        br.X = body.pose.b;
        br.angle = body.pose.angle();
        br.V = body.V;
        br.w = body.w;
        br.rigidity = rigidityResidual(s.u, body);
        r.bodies.push_back(br);
    }
    r.mech = std::move(s);
    r.mag = ind.state;
    return r;
}

}  // namespace pmhd
