#include "pmhd/nondim.hpp"

#include "pmhd/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pmhd {
namespace {

void requirePositive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ArgumentError(std::string("scale input ") + name + " must be positive and finite");
}

void checkMaterial(const Material& m) {
    requirePositive(m.mu0, "mu0");
    requirePositive(m.eps0, "eps0");
    requirePositive(m.mur, "mur");
    requirePositive(m.epsr, "epsr");
    requirePositive(m.sigma, "sigma");
}

void checkFree(const FreeScales& f) {
    for (double v : {f.rhobar, f.pbar, f.gbar, f.Hbar, f.Dbar})
        if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("free scales must be non-negative and finite");
}

Verdict classify(double v, double holds, double marginal) {
    if (v <= holds) return Verdict::Holds;
    if (v <= marginal) return Verdict::Marginal;
    return Verdict::Violated;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Grid scaleGrid(const Grid& g, double f) {
    return Grid{g.nx, g.ny, g.dx * f, g.dy * f, g.x0 * f, g.y0 * f};
}

ScalarField rescale(const ScalarField& f, const Grid& g, double factor) {
    ScalarField out(g, f.location());
    for (std::size_t k = 0; k < f.size(); ++k) out.values()[k] = f.values()[k] * factor;
    return out;
}

VectorField rescale(const VectorField& f, const Grid& g, double factor) {
    VectorField out(g);
    out.x() = rescale(f.x(), g, factor);
    out.y() = rescale(f.y(), g, factor);
    return out;
}

RigidBody scaleBody(RigidBody b, double length, double time) {
    b.shape.radius *= length;
    b.shape.width *= length;
    b.shape.height *= length;
    b.pose.b = {b.pose.b[0] * length, b.pose.b[1] * length};
    b.V = {b.V[0] * length / time, b.V[1] * length / time};
    b.w /= time;
    b.delta *= length;
    return b;
}

// Magnetic potential scale B x; the node current source is scaled by j mu'
// so the induction equation keeps its form (see nondimensionalizeProblem).
double muPrime(const CharacteristicScales& s) {
    return s.material.mu() * s.rhobar * s.ubar * s.ubar / (s.Bbar * s.Bbar);
}

}  // namespace

double CharacteristicScales::c() const { return 1.0 / std::sqrt(material.mu0 * material.eps0); }

CharacteristicScales closeScales(double xbar, double tbar, double Bbar, const Material& mat, const FreeScales& free) {
    requirePositive(xbar, "xbar");
    requirePositive(tbar, "tbar");
    requirePositive(Bbar, "Bbar");
    checkMaterial(mat);
    checkFree(free);
    CharacteristicScales s;
    s.material = mat;
    s.xbar = xbar;
    s.tbar = tbar;
    s.Bbar = Bbar;
    s.ubar = xbar / tbar;
    s.Ebar = Bbar * xbar / tbar;
    s.jbar = Bbar / (mat.mu() * xbar);
    s.rhocbar = mat.eps() * s.ubar * Bbar / xbar;
    s.rhobar = free.rhobar;
    s.pbar = free.pbar;
    s.gbar = free.gbar;
    s.Hbar = free.Hbar;
    s.Dbar = free.Dbar;
    return s;
}

CharacteristicScales closeScalesFromVelocity(double xbar, double ubar, double jbar, const Material& mat,
                                             const FreeScales& free) {
    requirePositive(xbar, "xbar");
    requirePositive(ubar, "ubar");
    requirePositive(jbar, "jbar");
    checkMaterial(mat);
    return closeScales(xbar, xbar / ubar, mat.mu() * jbar * xbar, mat, free);
}

std::string toString(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Marginal: return "marginal";
        case Verdict::Violated: return "violated";
    }
    return "?";
}

double displacementCurrentRatio(const CharacteristicScales& s) {
    const double r = s.ubar / s.c();
    return r * r;
}

ApproximationReport checkAssumptions(const CharacteristicScales& s, const AssumptionThresholds& t) {
    ApproximationReport r;
    r.thresholds = t;
    r.ratioUC = s.ubar / s.c();
    r.displacementRatio = displacementCurrentRatio(s);
    r.murEpsr = s.material.mur * s.material.epsr;
    r.speed = classify(r.ratioUC, t.speedHolds, t.speedMarginal);
    r.material = classify(std::abs(r.murEpsr - 1.0), t.materialHolds, t.materialMarginal);
    return r;
}

std::string formatReport(const CharacteristicScales& s, const ApproximationReport& r) {
    std::ostringstream os;
    auto line = [&](const char* k, double v) { os << k << ": " << g17(v) << '\n'; };
    auto freeLine = [&](const char* k, double v) {
        if (v > 0.0)
            os << k << ": " << g17(v) << " (user-supplied, no closure relation)\n";
        else
            os << k << ": unset (no closure relation)\n";
    };
    line("xbar", s.xbar);
    line("tbar", s.tbar);
    line("ubar", s.ubar);
    line("Bbar", s.Bbar);
    line("Ebar", s.Ebar);
    line("jbar", s.jbar);
    line("rhocbar", s.rhocbar);
    freeLine("rhobar", s.rhobar);
    freeLine("pbar", s.pbar);
    freeLine("gbar", s.gbar);
    freeLine("Hbar", s.Hbar);
    freeLine("Dbar", s.Dbar);
    line("mu0", s.material.mu0);
    line("eps0", s.material.eps0);
    line("mur", s.material.mur);
    line("epsr", s.material.epsr);
    line("sigma", s.material.sigma);
    line("c", s.c());
    line("closure_E_over_B", s.Ebar / s.Bbar);
    line("ratio_u_c", r.ratioUC);
    line("displacement_ratio", r.displacementRatio);
    line("mur_epsr", r.murEpsr);
    os << "verdict_speed: " << toString(r.speed) << " (holds <= " << g17(r.thresholds.speedHolds)
       << ", marginal <= " << g17(r.thresholds.speedMarginal) << ")\n";
    os << "verdict_material: " << toString(r.material) << " (|mur epsr - 1| holds <= "
       << g17(r.thresholds.materialHolds) << ", marginal <= " << g17(r.thresholds.materialMarginal) << ")\n";
    return os.str();
}

double scaleOf(const CharacteristicScales& s, Quantity q) {
    double v = 0.0;
    const char* name = "";
    switch (q) {
        case Quantity::Length: v = s.xbar; name = "length"; break;
        case Quantity::Time: v = s.tbar; name = "time"; break;
        case Quantity::Velocity: v = s.ubar; name = "velocity"; break;
        case Quantity::Density: v = s.rhobar; name = "density"; break;
        case Quantity::Pressure: v = s.pbar; name = "pressure"; break;
        case Quantity::Gravity: v = s.gbar; name = "gravity"; break;
        case Quantity::MagneticField: v = s.Bbar; name = "magnetic field"; break;
        case Quantity::ElectricField: v = s.Ebar; name = "electric field"; break;
        case Quantity::HField: v = s.Hbar; name = "H field"; break;
        case Quantity::DField: v = s.Dbar; name = "D field"; break;
        case Quantity::CurrentDensity: v = s.jbar; name = "current density"; break;
        case Quantity::ChargeDensity: v = s.rhocbar; name = "charge density"; break;
    }
    if (!(v > 0.0)) throw ArgumentError(std::string("no scale supplied for ") + name);
    return v;
}

ScalarField nondimensionalize(const ScalarField& f, Quantity q, const CharacteristicScales& s) {
    ScalarField out = f;
    const double k = scaleOf(s, q);
    for (double& v : out.values()) v /= k;
    return out;
}

ScalarField redimensionalize(const ScalarField& f, Quantity q, const CharacteristicScales& s) {
    ScalarField out = f;
    const double k = scaleOf(s, q);
    for (double& v : out.values()) v *= k;
    return out;
}

VectorField nondimensionalize(const VectorField& f, Quantity q, const CharacteristicScales& s) {
    VectorField out = f;
    out.x() = nondimensionalize(f.x(), q, s);
    out.y() = nondimensionalize(f.y(), q, s);
    return out;
}

VectorField redimensionalize(const VectorField& f, Quantity q, const CharacteristicScales& s) {
    VectorField out = f;
    out.x() = redimensionalize(f.x(), q, s);
    out.y() = redimensionalize(f.y(), q, s);
    return out;
}

double energyScale(const CharacteristicScales& s) { return s.rhobar * s.ubar * s.ubar * s.xbar * s.xbar; }

DimensionlessProblem nondimensionalizeProblem(const Grid& grid, const SchemeParams& p, const MechanicalState& mech,
                                              const MagneticState& mag, const Forces& forces,
                                              const CharacteristicScales& s) {
    scaleOf(s, Quantity::Density);
    if (p.eps != 0.0) throw ArgumentError("nondimensionalizeProblem: eps must be 0");
    if (!(mech.rho.grid() == grid) || !(mag.psi.grid() == grid))
        throw ArgumentError("nondimensionalizeProblem: states do not live on the given grid");
    const double rho = s.rhobar, u = s.ubar, x = s.xbar, t = s.tbar;
    const double viscScale = rho * u * x;
    const double mup = muPrime(s);

    DimensionlessProblem d;
    d.grid = scaleGrid(grid, 1.0 / x);
    d.params = p;
    d.params.nu = p.nu / viscScale;
    d.params.lambda = p.lambda / viscScale;
    d.params.m = p.m * x * x * x / viscScale;
    d.params.a = p.a * std::pow(rho, p.gamma - 1.0) / (u * u);
    d.params.alpha = p.alpha * std::pow(rho, p.beta - 1.0) / (u * u);
    d.params.mu = mup;
    d.params.sigma = p.sigma * p.mu * x * x / (t * mup);
    d.params.dt = p.dt / t;
    d.params.delta = p.delta / x;

    d.mech.rho = rescale(mech.rho, d.grid, 1.0 / rho);
    d.mech.u = rescale(mech.u, d.grid, 1.0 / u);
    d.mech.time = mech.time / t;
    for (const auto& b : mech.bodies) d.mech.bodies.push_back(scaleBody(b, 1.0 / x, 1.0 / t));
    d.mag.psi = rescale(mag.psi, d.grid, 1.0 / (s.Bbar * x));
    d.mag.k = mag.k;
    d.forces.gravity = {forces.gravity[0] * t / u, forces.gravity[1] * t / u};
    if (forces.current.size() > 0) d.forces.current = rescale(forces.current, d.grid, 1.0 / (s.jbar * mup));
    return d;
}

MechanicalState redimensionalizeMechanical(const MechanicalState& m, const Grid& dimGrid,
                                           const CharacteristicScales& s) {
    MechanicalState out;
    out.rho = rescale(m.rho, dimGrid, s.rhobar);
    out.u = rescale(m.u, dimGrid, s.ubar);
    out.time = m.time * s.tbar;
    for (const auto& b : m.bodies) out.bodies.push_back(scaleBody(b, s.xbar, s.tbar));
    return out;
}

MagneticState redimensionalizeMagnetic(const MagneticState& m, const Grid& dimGrid, const CharacteristicScales& s) {
    return MagneticState{rescale(m.psi, dimGrid, s.Bbar * s.xbar), m.k};
}

}  // namespace pmhd
