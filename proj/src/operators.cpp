#include "pmhd/operators.hpp"

#include "pmhd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pmhd {
namespace {

void requireLocation(const ScalarField& f, Location loc, const char* op) {
    if (f.location() != loc) {
        throw ArgumentError(std::string(op) + ": expected " + toString(loc) + " field, got " +
                            toString(f.location()));
    }
}

// Derivative at node m (position m*h) of samples f(k) located at (k + 1/2) h,
// k = 0..n-1. Interior nodes are centered; the two end nodes use the
// second-order one-sided stencil through the three nearest samples.
template <class F>
double staggeredToNode(F&& f, int m, int n, double h) {
    if (m > 0 && m < n) return (f(m) - f(m - 1)) / h;
    if (m == 0) return (-2.0 * f(0) + 3.0 * f(1) - f(2)) / h;
    return (2.0 * f(n - 1) - 3.0 * f(n - 2) + f(n - 3)) / h;
}

// Derivative at sample k of a collocated sequence f(0..n-1) with spacing h.
template <class F>
double collocated(F&& f, int k, int n, double h) {
    if (k > 0 && k < n - 1) return (f(k + 1) - f(k - 1)) / (2.0 * h);
    if (k == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
    return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
}

}  // namespace

VectorField grad(const ScalarField& f) {
    requireLocation(f, Location::Center, "grad");
    const Grid& g = f.grid();
    VectorField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) out.x()(i, j) = (f(i, j) - f(i - 1, j)) / g.dx;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.y()(i, j) = (f(i, j) - f(i, j - 1)) / g.dy;
    return out;
}

ScalarField div(const VectorField& v) {
    const Grid& g = v.grid();
    ScalarField out(g, Location::Center);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            out(i, j) = (v.x()(i + 1, j) - v.x()(i, j)) / g.dx +
                        (v.y()(i, j + 1) - v.y()(i, j)) / g.dy;
        }
    return out;
}

ScalarField curl2d(const VectorField& v) {
    const Grid& g = v.grid();
    ScalarField out(g, Location::Node);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const double dvy_dx =
                staggeredToNode([&](int k) { return v.y()(k, j); }, i, g.nx, g.dx);
            const double dvx_dy =
                staggeredToNode([&](int k) { return v.x()(i, k); }, j, g.ny, g.dy);
            out(i, j) = dvy_dx - dvx_dy;
        }
    return out;
}

VectorField gradPerp(const ScalarField& psi) {
    requireLocation(psi, Location::Node, "gradPerp");
    const Grid& g = psi.grid();
    VectorField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) out.x()(i, j) = (psi(i, j + 1) - psi(i, j)) / g.dy;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.y()(i, j) = -(psi(i + 1, j) - psi(i, j)) / g.dx;
    return out;
}

TensorField symgrad(const VectorField& u) {
    const Grid& g = u.grid();
    TensorField out(g);
    const ScalarField uc = faceXToCenter(u.x());
    const ScalarField vc = faceYToCenter(u.y());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            out.xx(i, j) = (u.x()(i + 1, j) - u.x()(i, j)) / g.dx;
            out.yy(i, j) = (u.y()(i, j + 1) - u.y()(i, j)) / g.dy;
            const double du_dy = collocated([&](int k) { return uc(i, k); }, j, g.ny, g.dy);
            const double dv_dx = collocated([&](int k) { return vc(k, j); }, i, g.nx, g.dx);
            out.xy(i, j) = 0.5 * (du_dy + dv_dx);
        }
    return out;
}

ScalarField laplacian(const ScalarField& f) { return div(grad(f)); }

double innerCells(const ScalarField& a, const ScalarField& b) {
    requireLocation(a, Location::Center, "innerCells");
    requireLocation(b, Location::Center, "innerCells");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a.values()[k] * b.values()[k];
    return s * a.grid().cellArea();
}

double innerFaces(const VectorField& a, const VectorField& b) {
    const Grid& g = a.grid();
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const double w = (i == 0 || i == g.nx) ? 0.5 : 1.0;
            s += w * a.x()(i, j) * b.x()(i, j);
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double w = (j == 0 || j == g.ny) ? 0.5 : 1.0;
            s += w * a.y()(i, j) * b.y()(i, j);
        }
    return s * g.cellArea();
}

double innerInteriorNodes(const ScalarField& a, const ScalarField& b) {
    requireLocation(a, Location::Node, "innerInteriorNodes");
    requireLocation(b, Location::Node, "innerInteriorNodes");
    const Grid& g = a.grid();
    double s = 0.0;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) s += a(i, j) * b(i, j);
    return s * g.cellArea();
}

ScalarField faceXToCenter(const ScalarField& ux) {
    requireLocation(ux, Location::XFace, "faceXToCenter");
    const Grid& g = ux.grid();
    ScalarField out(g, Location::Center);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out(i, j) = 0.5 * (ux(i, j) + ux(i + 1, j));
    return out;
}

ScalarField faceYToCenter(const ScalarField& uy) {
    requireLocation(uy, Location::YFace, "faceYToCenter");
    const Grid& g = uy.grid();
    ScalarField out(g, Location::Center);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out(i, j) = 0.5 * (uy(i, j) + uy(i, j + 1));
    return out;
}

double maxAbsDivergence(const VectorField& v) { return div(v).maxAbs(); }

}  // namespace pmhd
