#include "pmhd/scheme.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pmhd {
namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::vector<std::string> SchemeParams::violations() const {
    std::vector<std::string> out;
    auto need = [&](bool ok, const std::string& cond, const std::string& got) {
        if (!ok) out.push_back("violated condition: " + cond + " (got " + got + ")");
    };
    need(nu > 0.0, "nu > 0", "nu = " + fmt(nu));
    need(nu + lambda >= 0.0, "nu + lambda >= 0", "nu + lambda = " + fmt(nu + lambda));
    need(a > 0.0, "a > 0", "a = " + fmt(a));
    need(gamma > 1.5, "gamma > 3/2", "gamma = " + fmt(gamma));
    need(sigma > 0.0, "sigma > 0", "sigma = " + fmt(sigma));
    need(mu > 0.0, "mu > 0", "mu = " + fmt(mu));
    need(beta > std::max(4.0, gamma), "beta > max(4, gamma)", "beta = " + fmt(beta));
    need(dt > 0.0 && std::isfinite(dt), "dt > 0", "dt = " + fmt(dt));
    need(m >= 0.0, "m >= 0", "m = " + fmt(m));
    need(eps >= 0.0, "eps >= 0", "eps = " + fmt(eps));
    need(alpha >= 0.0, "alpha >= 0", "alpha = " + fmt(alpha));
    need(delta >= 0.0, "delta >= 0", "delta = " + fmt(delta));
    need(picardTol > 0.0, "picard_tol > 0", "picard_tol = " + fmt(picardTol));
    need(picardMax >= 1, "picard_max >= 1", "picard_max = " + std::to_string(picardMax));
    need(innerSubsteps >= 1, "inner_substeps >= 1", "inner_substeps = " + std::to_string(innerSubsteps));
    return out;
}

void SchemeParams::validate() const {
    const auto v = violations();
    if (!v.empty()) throw ConfigError(v.front());
}

VectorField MagneticState::B() const { return gradPerp(psi); }

double MagneticState::boundaryVariation() const {
    const Grid& g = psi.grid();
    const double c = psi(0, 0);
    double d = 0.0;
    for (int i = 0; i <= g.nx; ++i) d = std::max({d, std::abs(psi(i, 0) - c), std::abs(psi(i, g.ny) - c)});
    for (int j = 0; j <= g.ny; ++j) d = std::max({d, std::abs(psi(0, j) - c), std::abs(psi(g.nx, j) - c)});
    return d;
}

ScalarField pressure(const ScalarField& rho, double a, double gamma) {
    ScalarField p(rho.grid(), rho.location());
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const double r = rho.values()[k];
        if (r < 0.0) throw InvariantError("negative density " + fmt(r) + " in pressure evaluation");
        p.values()[k] = a * std::pow(r, gamma);
    }
    return p;
}

double pressureLaw(double rho, const SchemeParams& p) {
    double v = p.a * std::pow(rho, p.gamma);
    if (p.alpha != 0.0) v += p.alpha * std::pow(rho, p.beta);
    return v;
}

double enthalpyLaw(double rho, const SchemeParams& p) {
    double v = p.a * p.gamma / (p.gamma - 1.0) * std::pow(rho, p.gamma - 1.0);
    if (p.alpha != 0.0) v += p.alpha * p.beta / (p.beta - 1.0) * std::pow(rho, p.beta - 1.0);
    return v;
}

double internalEnergyDensity(double rho, const SchemeParams& p) {
    return p.a / (p.gamma - 1.0) * std::pow(rho, p.gamma);
}

double artificialEnergyDensity(double rho, const SchemeParams& p) {
    return p.alpha == 0.0 ? 0.0 : p.alpha / (p.beta - 1.0) * std::pow(rho, p.beta);
}

ViscosityFields variableViscosity(const ScalarField& chi, double nu, double lambda, double m) {
    if (m < 0.0) throw ArgumentError("variableViscosity: penalization m must be >= 0");
    ViscosityFields out{ScalarField(chi.grid(), chi.location(), nu),
                        ScalarField(chi.grid(), chi.location(), lambda)};
    if (m == 0.0) return out;
    for (std::size_t k = 0; k < chi.size(); ++k) {
        const double h = m * penaltyH(chi.values()[k]);
        out.nu.values()[k] += h;
        out.lambda.values()[k] += h;
    }
    return out;
}

ScalarField interiorCurl(const ScalarField& psi) {
    if (psi.location() != Location::Node) throw ArgumentError("interiorCurl: psi must be node-located");
    const Grid& g = psi.grid();
    ScalarField w(g, Location::Node);
    const double ix2 = 1.0 / (g.dx * g.dx), iy2 = 1.0 / (g.dy * g.dy);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            w(i, j) = -((psi(i + 1, j) - 2 * psi(i, j) + psi(i - 1, j)) * ix2 +
                        (psi(i, j + 1) - 2 * psi(i, j) + psi(i, j - 1)) * iy2);
        }
    return w;
}

VectorField lorentzForce(const ScalarField& psi, double mu) {
    if (!(mu > 0.0)) throw ArgumentError("lorentzForce: mu must be positive");
    const Grid& g = psi.grid();
    const VectorField B = gradPerp(psi);
    const ScalarField w = interiorCurl(psi);
    // w * averaged B components at interior nodes
    ScalarField wb1(g, Location::Node), wb2(g, Location::Node);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            wb1(i, j) = w(i, j) * 0.5 * (B.x()(i, j - 1) + B.x()(i, j));
            wb2(i, j) = w(i, j) * 0.5 * (B.y()(i - 1, j) + B.y()(i, j));
        }
    VectorField f(g);
    const double s = 0.5 / mu;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) f.x()(i, j) = -s * (wb2(i, j) + wb2(i, j + 1));
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.y()(i, j) = s * (wb1(i, j) + wb1(i + 1, j));
    return f;
}

ScalarField transportTerm(const VectorField& u, const VectorField& B) {
    const Grid& g = u.grid();
    ScalarField t(g, Location::Node);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            const double u1 = 0.5 * (u.x()(i, j - 1) + u.x()(i, j));
            const double u2 = 0.5 * (u.y()(i - 1, j) + u.y()(i, j));
            const double b1 = 0.5 * (B.x()(i, j - 1) + B.x()(i, j));
            const double b2 = 0.5 * (B.y()(i - 1, j) + B.y()(i, j));
            t(i, j) = u1 * b2 - u2 * b1;
        }
    return t;
}

}  // namespace pmhd
