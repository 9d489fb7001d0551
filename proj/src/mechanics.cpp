#include "pmhd/mechanics.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/operators.hpp"
#include "reused_lu.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pmhd {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using Trip = Eigen::Triplet<double>;
using detail::ReusedLU;

// Unknown numbering: interior x-faces first, then interior y-faces.
struct FaceIndex {
    int nx, ny;
    int countX() const { return (nx - 1) * ny; }
    int count() const { return countX() + nx * (ny - 1); }
    int x(int i, int j) const { return j * (nx - 1) + (i - 1); }
    int y(int i, int j) const { return countX() + (j - 1) * nx + i; }
};

Vec pack(const VectorField& u) {
    const Grid& g = u.grid();
    const FaceIndex f{g.nx, g.ny};
    Vec v(f.count());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) v[f.x(i, j)] = u.x()(i, j);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) v[f.y(i, j)] = u.y()(i, j);
    return v;
}

VectorField unpack(const Grid& g, const Vec& v) {
    const FaceIndex f{g.nx, g.ny};
    VectorField u(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) u.x()(i, j) = v[f.x(i, j)];
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) u.y()(i, j) = v[f.y(i, j)];
    return u;
}

// Viscous operator K = G^T W G, scaled by the cell area so that u^T K u is the
// integrated dissipation rate.
SpMat viscousOperator(const Grid& g, const std::vector<RigidBody>& bodies, const SchemeParams& p) {
    const FaceIndex f{g.nx, g.ny};
    const auto cellVisc = variableViscosity(signedDistanceField(g, bodies, Location::Center), p.nu, p.lambda, p.m);
    const auto nodeVisc = variableViscosity(signedDistanceField(g, bodies, Location::Node), p.nu, p.lambda, p.m);
    const int nc = g.nx * g.ny;
    const int nn = (g.nx + 1) * (g.ny + 1);
    std::vector<Trip> t;
    t.reserve(8 * nc + 4 * nn);
    std::vector<double> w(3 * nc + nn, 0.0);
    const double area = g.cellArea();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int c = j * g.nx + i;
            // d u1/dx, d u2/dy, div
            if (i + 1 < g.nx) {
                t.emplace_back(c, f.x(i + 1, j), 1.0 / g.dx);
                t.emplace_back(2 * nc + c, f.x(i + 1, j), 1.0 / g.dx);
            }
            if (i > 0) {
                t.emplace_back(c, f.x(i, j), -1.0 / g.dx);
                t.emplace_back(2 * nc + c, f.x(i, j), -1.0 / g.dx);
            }
            if (j + 1 < g.ny) {
                t.emplace_back(nc + c, f.y(i, j + 1), 1.0 / g.dy);
                t.emplace_back(2 * nc + c, f.y(i, j + 1), 1.0 / g.dy);
            }
            if (j > 0) {
                t.emplace_back(nc + c, f.y(i, j), -1.0 / g.dy);
                t.emplace_back(2 * nc + c, f.y(i, j), -1.0 / g.dy);
            }
            w[c] = 2.0 * cellVisc.nu(i, j) * area;
            w[nc + c] = 2.0 * cellVisc.nu(i, j) * area;
            w[2 * nc + c] = cellVisc.lambda(i, j) * area;
        }
    // shear 1/2 (du1/dy + du2/dx) at nodes; no-slip walls via odd ghost values
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const int r = 3 * nc + j * (g.nx + 1) + i;
            const bool xWall = (i == 0 || i == g.nx);
            const bool yWall = (j == 0 || j == g.ny);
            if (xWall && yWall) continue;
            if (!xWall) {
                // x-faces (i, j-1) below and (i, j) above
                const double s = 0.5 / g.dy;
                if (j < g.ny) t.emplace_back(r, f.x(i, j), yWall ? 2 * s : s);
                if (j > 0) t.emplace_back(r, f.x(i, j - 1), yWall ? -2 * s : -s);
            }
            if (!yWall) {
                const double s = 0.5 / g.dx;
                if (i < g.nx) t.emplace_back(r, f.y(i, j), xWall ? 2 * s : s);
                if (i > 0) t.emplace_back(r, f.y(i - 1, j), xWall ? -2 * s : -s);
            }
            const double weight = (xWall || yWall) ? 0.5 : 1.0;
            w[r] = 4.0 * nodeVisc.nu(i, j) * weight * area;
        }
    SpMat gmat(3 * nc + nn, f.count());
    gmat.setFromTriplets(t.begin(), t.end());
    Vec wv = Eigen::Map<Vec>(w.data(), static_cast<Eigen::Index>(w.size()));
    SpMat wg = wv.asDiagonal() * gmat;
    SpMat k = SpMat(gmat.transpose()) * wg;
    return k;
}

struct Fluxes {
    ScalarField x;  // through x-faces, walls zero
    ScalarField y;
};

class ContinuitySolver {
public:
    ContinuitySolver(const Grid& g, double eps, ReusedLU& lu) : g_(g), eps_(eps), lu_(lu) {}

    // rho' from rho with the given face velocities, implicit upwind + diffusion.
    ScalarField solve(const ScalarField& rho, const VectorField& u, double dt) {
        const int n = g_.nx * g_.ny;
        const double area = g_.cellArea();
        std::vector<Trip> t;
        t.reserve(5 * n);
        for (int c = 0; c < n; ++c) t.emplace_back(c, c, area / dt);
        auto face = [&](int kc, int lc, double vel, double len, double h) {
            const double cK = len * std::max(vel, 0.0) + eps_ * len / h;
            const double cL = len * std::min(vel, 0.0) - eps_ * len / h;
            t.emplace_back(kc, kc, cK);
            t.emplace_back(kc, lc, cL);
            t.emplace_back(lc, kc, -cK);
            t.emplace_back(lc, lc, -cL);
        };
        for (int j = 0; j < g_.ny; ++j)
            for (int i = 1; i < g_.nx; ++i) face(j * g_.nx + i - 1, j * g_.nx + i, u.x()(i, j), g_.dy, g_.dx);
        for (int j = 1; j < g_.ny; ++j)
            for (int i = 0; i < g_.nx; ++i) face((j - 1) * g_.nx + i, j * g_.nx + i, u.y()(i, j), g_.dx, g_.dy);
        SpMat a(n, n);
        a.setFromTriplets(t.begin(), t.end());
        Vec rhs(n);
        for (int c = 0; c < n; ++c) rhs[c] = area * rho.values()[c] / dt;
        const Vec guess = Eigen::Map<const Vec>(rho.values().data(), n);
        const Vec r = lu_.solve(a, rhs, guess, "continuity");
        if (!r.allFinite()) throw SolverError("continuity: non-finite density after solve");
        ScalarField out(g_, Location::Center);
        for (int c = 0; c < n; ++c) out.values()[c] = r[c];
        return out;
    }

    Fluxes fluxes(const ScalarField& rho, const VectorField& u) const {
        Fluxes f{ScalarField(g_, Location::XFace), ScalarField(g_, Location::YFace)};
        for (int j = 0; j < g_.ny; ++j)
            for (int i = 1; i < g_.nx; ++i) {
                const double v = u.x()(i, j);
                const double up = v >= 0.0 ? rho(i - 1, j) : rho(i, j);
                f.x(i, j) = g_.dy * (up * v - eps_ * (rho(i, j) - rho(i - 1, j)) / g_.dx);
            }
        for (int j = 1; j < g_.ny; ++j)
            for (int i = 0; i < g_.nx; ++i) {
                const double v = u.y()(i, j);
                const double up = v >= 0.0 ? rho(i, j - 1) : rho(i, j);
                f.y(i, j) = g_.dx * (up * v - eps_ * (rho(i, j) - rho(i, j - 1)) / g_.dy);
            }
        return f;
    }

private:
    Grid g_;
    double eps_;
    ReusedLU& lu_;
};

// Lagged |u|^2 on faces from the face value and the four nearest
// perpendicular components.
Vec laggedSpeedSquared(const VectorField& u) {
    const Grid& g = u.grid();
    const FaceIndex f{g.nx, g.ny};
    Vec s(f.count());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            const double v = 0.25 * (u.y()(i - 1, j) + u.y()(i, j) + u.y()(i - 1, j + 1) + u.y()(i, j + 1));
            s[f.x(i, j)] = u.x()(i, j) * u.x()(i, j) + v * v;
        }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double v = 0.25 * (u.x()(i, j - 1) + u.x()(i + 1, j - 1) + u.x()(i, j) + u.x()(i + 1, j));
            s[f.y(i, j)] = u.y()(i, j) * u.y()(i, j) + v * v;
        }
    return s;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

struct MechanicalWorkspace::Impl {
    ReusedLU continuity;
    ReusedLU momentum;
};

MechanicalWorkspace::MechanicalWorkspace() : impl_(std::make_unique<Impl>()) {}
MechanicalWorkspace::~MechanicalWorkspace() = default;

double kineticEnergy(const ScalarField& rho, const VectorField& u) {
    const Grid& g = rho.grid();
    double e = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) e += 0.25 * (rho(i - 1, j) + rho(i, j)) * u.x()(i, j) * u.x()(i, j);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) e += 0.25 * (rho(i, j - 1) + rho(i, j)) * u.y()(i, j) * u.y()(i, j);
    return e * g.cellArea();
}

double internalEnergy(const ScalarField& rho, const SchemeParams& p) {
    double e = 0.0;
    for (double r : rho.values()) e += internalEnergyDensity(r, p);
    return e * rho.grid().cellArea();
}

double artificialEnergy(const ScalarField& rho, const SchemeParams& p) {
    double e = 0.0;
    for (double r : rho.values()) e += artificialEnergyDensity(r, p);
    return e * rho.grid().cellArea();
}

double viscousDissipationRate(const VectorField& u, const std::vector<RigidBody>& bodies,
                              const SchemeParams& p) {
    const SpMat k = viscousOperator(u.grid(), bodies, p);
    const Vec v = pack(u);
    return v.dot(k * v);
}

double cflLimit(const VectorField& u) {
    const Grid& g = u.grid();
    const double umax = u.maxAbs();
    return umax == 0.0 ? std::numeric_limits<double>::infinity() : 0.5 * std::min(g.dx, g.dy) / umax;
}

MechanicalState mechanicalSubstep(const MechanicalState& s, const VectorField& lorentz, Point gravity,
                                  const SchemeParams& p, double dtInner, MechanicalBudget* budget,
                                  MechanicalWorkspace* workspace) {
    const Grid& g = s.rho.grid();
    if (!(dtInner > 0.0)) throw ArgumentError("mechanicalSubstep: dtInner must be positive");
    const double limit = cflLimit(s.u);
    if (dtInner > limit) {
        throw SolverError("CFL violated: |u| dt = " + fmt(s.u.maxAbs() * dtInner) + " > 0.5 min(dx, dy); suggested dt_inner <= " +
                          fmt(0.9 * limit));
    }
    if (s.rho.minValue() < 0.0) throw InvariantError("negative density entering a mechanical substep");

    const FaceIndex fi{g.nx, g.ny};
    const int nf = fi.count();
    const double area = g.cellArea();
    const SpMat visc = viscousOperator(g, s.bodies, p);
    const Vec speed2 = p.eps > 0.0 ? laggedSpeedSquared(s.u) : Vec::Zero(nf);
    const Vec u0 = pack(s.u);
    const Vec fl = pack(lorentz);

    MechanicalWorkspace local;
    MechanicalWorkspace::Impl& ws = (workspace ? *workspace : local).impl();
    ContinuitySolver cont(g, p.eps, ws.continuity);

    VectorField uk = s.u;
    Vec ukv = u0;
    ScalarField rhoNew;
    Fluxes flux;
    Vec unew;
    bool converged = false;
    int it = 0;
    for (it = 1; it <= p.picardMax; ++it) {
        rhoNew = cont.solve(s.rho, uk, dtInner);
        flux = cont.fluxes(rhoNew, uk);

        std::vector<Trip> t;
        t.reserve(6 * nf);
        Vec rhs(nf);
        auto edge = [&](int row, double fout, int nb) {
            // always insert both entries so the sparsity pattern is fixed
            t.emplace_back(row, row, fout >= 0.0 ? fout : 0.0);
            if (nb >= 0) t.emplace_back(row, nb, fout < 0.0 ? fout : 0.0);
        };
        for (int j = 0; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i) {
                const int r = fi.x(i, j);
                const double rd1 = 0.5 * (rhoNew(i - 1, j) + rhoNew(i, j));
                const double rd0 = 0.5 * (s.rho(i - 1, j) + s.rho(i, j));
                t.emplace_back(r, r, area * rd1 / dtInner + area * p.eps * speed2[r]);
                edge(r, 0.5 * (flux.x(i, j) + flux.x(i + 1, j)), i + 1 < g.nx ? fi.x(i + 1, j) : -1);
                edge(r, -0.5 * (flux.x(i - 1, j) + flux.x(i, j)), i - 1 > 0 ? fi.x(i - 1, j) : -1);
                edge(r, j + 1 < g.ny ? 0.5 * (flux.y(i - 1, j + 1) + flux.y(i, j + 1)) : 0.0,
                     j + 1 < g.ny ? fi.x(i, j + 1) : -1);
                edge(r, j > 0 ? -0.5 * (flux.y(i - 1, j) + flux.y(i, j)) : 0.0, j > 0 ? fi.x(i, j - 1) : -1);
                rhs[r] = area * rd0 * u0[r] / dtInner -
                         g.dy * (pressureLaw(rhoNew(i, j), p) - pressureLaw(rhoNew(i - 1, j), p)) +
                         area * rd1 * gravity[0] + area * fl[r];
            }
        for (int j = 1; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int r = fi.y(i, j);
                const double rd1 = 0.5 * (rhoNew(i, j - 1) + rhoNew(i, j));
                const double rd0 = 0.5 * (s.rho(i, j - 1) + s.rho(i, j));
                t.emplace_back(r, r, area * rd1 / dtInner + area * p.eps * speed2[r]);
                edge(r, 0.5 * (flux.y(i, j) + flux.y(i, j + 1)), j + 1 < g.ny ? fi.y(i, j + 1) : -1);
                edge(r, -0.5 * (flux.y(i, j - 1) + flux.y(i, j)), j - 1 > 0 ? fi.y(i, j - 1) : -1);
                edge(r, i + 1 < g.nx ? 0.5 * (flux.x(i + 1, j - 1) + flux.x(i + 1, j)) : 0.0,
                     i + 1 < g.nx ? fi.y(i + 1, j) : -1);
                edge(r, i > 0 ? -0.5 * (flux.x(i, j - 1) + flux.x(i, j)) : 0.0, i > 0 ? fi.y(i - 1, j) : -1);
                rhs[r] = area * rd0 * u0[r] / dtInner -
                         g.dx * (pressureLaw(rhoNew(i, j), p) - pressureLaw(rhoNew(i, j - 1), p)) +
                         area * rd1 * gravity[1] + area * fl[r];
            }
        SpMat m(nf, nf);
        m.setFromTriplets(t.begin(), t.end());
        m += visc;
        unew = ws.momentum.solve(m, rhs, ukv, "momentum");
        if (!unew.allFinite()) throw SolverError("momentum: non-finite velocity after solve");
        const double resid = (m * unew - rhs).norm();
        if (!(resid <= 1e-8 * std::max(1.0, rhs.norm())))
            throw SolverError("momentum: linear residual " + fmt(resid) + " after direct solve");

        const double diff = (unew - ukv).lpNorm<Eigen::Infinity>();
        const double scale = std::max(unew.lpNorm<Eigen::Infinity>(), u0.lpNorm<Eigen::Infinity>());
        if (diff <= p.picardTol * scale) {
            converged = true;
            break;
        }
        ukv = unew;
        uk = unpack(g, unew);
    }
    if (!converged) {
        throw SolverError("mechanical Picard iteration did not converge in " + std::to_string(p.picardMax) +
                          " sweeps; reduce dt or inner substep length");
    }
    if (rhoNew.minValue() < 0.0) throw InvariantError("density became negative: min rho = " + fmt(rhoNew.minValue()));

    MechanicalState out{rhoNew, unpack(g, unew), s.bodies, s.time + dtInner};
    if (budget) {
        budget->viscous += dtInner * unew.dot(visc * unew);
        double reg = area * p.eps * (speed2.cwiseProduct(unew.cwiseProduct(unew))).sum();
        if (p.eps > 0.0) {
            for (int j = 0; j < g.ny; ++j)
                for (int i = 1; i < g.nx; ++i) {
                    const double dr = rhoNew(i, j) - rhoNew(i - 1, j);
                    reg += p.eps * g.dy / g.dx * dr * (enthalpyLaw(rhoNew(i, j), p) - enthalpyLaw(rhoNew(i - 1, j), p));
                }
            for (int j = 1; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const double dr = rhoNew(i, j) - rhoNew(i, j - 1);
                    reg += p.eps * g.dx / g.dy * dr * (enthalpyLaw(rhoNew(i, j), p) - enthalpyLaw(rhoNew(i, j - 1), p));
                }
        }
        budget->regularizer += dtInner * reg;
        double grav = 0.0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i)
                grav += 0.5 * (rhoNew(i - 1, j) + rhoNew(i, j)) * gravity[0] * unew[fi.x(i, j)];
        for (int j = 1; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                grav += 0.5 * (rhoNew(i, j - 1) + rhoNew(i, j)) * gravity[1] * unew[fi.y(i, j)];
        budget->gravityWork += dtInner * area * grav;
        budget->lorentzWork += dtInner * area * fl.dot(unew);
        budget->substeps += 1;
        budget->maxPicard = std::max(budget->maxPicard, it);
    }
    return out;
}

}  // namespace pmhd
