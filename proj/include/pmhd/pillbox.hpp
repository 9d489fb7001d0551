#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace pmhd {

/// Interface curve zeta = phi(theta) with phi(0) = phi'(0) = 0.
struct Curve {
    std::function<double(double)> phi;
    std::function<double(double)> dphi;

    static Curve flat();
    /// phi = 0.5 k theta^2.
    static Curve parabola(double k);
};

/// Region between phi - dl and phi + dl over theta in (-ds, ds).
struct CurvedRectangle {
    Curve curve;
    double ds = 0.0;
    double dl = 0.0;
};

/// Interface surface zeta = Phi(theta, eta) with Phi and its gradient zero at 0.
struct Surface {
    std::function<double(double, double)> Phi;
    std::function<double(double, double)> d1;
    std::function<double(double, double)> d2;

    static Surface flat();
    /// Phi = 0.5 (k1 theta^2 + k2 eta^2).
    static Surface paraboloid(double k1, double k2);
};

/// Region between Phi - dl and Phi + dl over the disk of radius r.
struct CurvedCylinder {
    Surface surface;
    double r = 0.0;
    double dl = 0.0;
};

/// Planar fields in (theta, zeta); the scalar is the out-of-plane component.
using PlanarField = std::function<std::array<double, 2>(double theta, double zeta)>;
using PlanarScalar = std::function<double(double theta, double zeta)>;
/// Fields in (theta, zeta, eta).
using SpatialField = std::function<std::array<double, 3>(double theta, double zeta, double eta)>;
using SpatialScalar = std::function<double(double theta, double zeta, double eta)>;

/// Composite Gauss-Legendre settings for smooth integrands (order 10 or 20).
/// Integrals across the interface use graded panels starting at `layer`.
struct Quadrature {
    int order = 10;
    int panels = 8;
    double layer = 1e-3;
};

/// Line integral of H around the boundary, counterclockwise in (theta, zeta).
double circulation(const PlanarField& H, const CurvedRectangle& rect, const Quadrature& q = {});
/// Integral of j over the rectangle.
double enclosedCurrent(const PlanarScalar& j, const CurvedRectangle& rect, const Quadrature& q = {});
/// |tau.H(0, dl) - tau.H(0, -dl) - K / (2 ds)| with tau = (-1, 0).
double tangentialDefect(const PlanarField& H, const PlanarScalar& j, const CurvedRectangle& rect,
                        const Quadrature& q = {});

/// Outward flux of D through the closed cylinder surface.
double flux(const SpatialField& D, const CurvedCylinder& cyl, const Quadrature& q = {});
/// Integral of the charge density over the cylinder.
double enclosedCharge(const SpatialScalar& rhoc, const CurvedCylinder& cyl, const Quadrature& q = {});
/// |n.[D(0, dl, 0) - D(0, -dl, 0)] - W / (pi r^2)| with n = (0, 1, 0).
double normalDefect(const SpatialField& D, const SpatialScalar& rhoc, const CurvedCylinder& cyl,
                    const Quadrature& q = {});

struct RateStudy {
    std::vector<double> sizes;
    std::vector<double> defects;
    bool identicallySatisfied = false;
    double slope = 0.0;

    std::string verdict() const;
};

/// Least-squares slope of log(defect) against log(size). Needs at least 4
/// sizes in geometric progression.
RateStudy rateStudy(const std::vector<double>& sizes, const std::function<double(double)>& defectAt);
std::vector<double> geometricSizes(double first, double ratio, int count);

/// Constructed fields with an interface layer of the given thickness.
struct TangentialCase {
    std::string name;
    Curve curve;
    PlanarField H;
    PlanarScalar j;
    int expectedSlope = 1;  // 0: identically satisfied
};

struct NormalCase {
    std::string name;
    Surface surface;
    SpatialField D;
    SpatialScalar rhoc;
    int expectedSlope = 1;
};

std::vector<TangentialCase> tangentialCases(double thickness);
std::vector<NormalCase> normalCases(double thickness);

/// One row per (case, size) with the fitted slope of the case repeated.
struct PillboxRow {
    std::string study;
    std::string name;
    double size = 0.0;
    double defect = 0.0;
    RateStudy result;
};

/// Tangential studies use ds = dl = size / 2, normal ones r = dl = size / 2.
std::vector<PillboxRow> runPillboxStudies(const std::vector<double>& sizes, double thickness);

}  // namespace pmhd
