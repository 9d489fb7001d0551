#include "pmhd/pillbox.hpp"

#include "pmhd/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace pmhd {
namespace {

constexpr double kPi = std::numbers::pi;

// Composite Gauss-Legendre over equal panels.
template <class F>
double integrate(F&& f, double a, double b, const Quadrature& q) {
    using boost::math::quadrature::gauss;
    double sum = 0.0;
    const double h = (b - a) / q.panels;
    for (int k = 0; k < q.panels; ++k) {
        const double lo = a + k * h, hi = lo + h;
        if (q.order == 10)
            sum += gauss<double, 10>::integrate(f, lo, hi);
        else
            sum += gauss<double, 20>::integrate(f, lo, hi);
    }
    return sum;
}

// Across the interface: 20-point panels whose widths double away from it,
// starting at `layer`, so a layer of that thickness is resolved.
template <class F>
double integrateAcross(F&& f, double halfWidth, double layer) {
    using boost::math::quadrature::gauss;
    double sum = 0.0;
    double lo = 0.0, width = std::min(layer, halfWidth);
    while (lo < halfWidth) {
        const double hi = std::min(lo + width, halfWidth);
        sum += gauss<double, 20>::integrate(f, lo, hi) + gauss<double, 20>::integrate(f, -hi, -lo);
        lo = hi;
        width *= 2.0;
    }
    return sum;
}

void check(const Quadrature& q) {
    if (q.order != 10 && q.order != 20) throw ArgumentError("quadrature order must be 10 or 20");
    if (q.panels < 1) throw ArgumentError("quadrature needs at least one panel");
    if (!(q.layer > 0.0)) throw ArgumentError("quadrature layer width must be positive");
}

void check(const CurvedRectangle& r) {
    if (!(r.ds > 0.0) || !(r.dl > 0.0)) throw ArgumentError("curved rectangle needs ds > 0 and dl > 0");
    if (!r.curve.phi || !r.curve.dphi) throw ArgumentError("curved rectangle needs phi and its derivative");
}

void check(const CurvedCylinder& c) {
    if (!(c.r > 0.0) || !(c.dl > 0.0)) throw ArgumentError("curved cylinder needs r > 0 and dl > 0");
    if (!c.surface.Phi || !c.surface.d1 || !c.surface.d2)
        throw ArgumentError("curved cylinder needs Phi and both partial derivatives");
}

double step(double s) { return 0.5 * (1.0 + std::tanh(s)); }
double stepSlope(double s) {
    const double c = std::cosh(s);
    return 0.5 / (c * c);
}

}  // namespace

Curve Curve::flat() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

Curve Curve::parabola(double k) {
    return {[k](double t) { return 0.5 * k * t * t; }, [k](double t) { return k * t; }};
}

Surface Surface::flat() {
    return {[](double, double) { return 0.0; }, [](double, double) { return 0.0; }, [](double, double) { return 0.0; }};
}

Surface Surface::paraboloid(double k1, double k2) {
    return {[k1, k2](double t, double e) { return 0.5 * (k1 * t * t + k2 * e * e); },
            [k1](double t, double) { return k1 * t; }, [k2](double, double e) { return k2 * e; }};
}

double circulation(const PlanarField& H, const CurvedRectangle& rect, const Quadrature& q) {
    check(q);
    check(rect);
    const auto& phi = rect.curve.phi;
    const auto& dphi = rect.curve.dphi;
    const double ds = rect.ds, dl = rect.dl;
    const double right = integrate([&](double z) { return H(ds, phi(ds) + z)[1]; }, -dl, dl, q);
    const double top = integrate(
        [&](double t) {
            const auto h = H(-t, phi(-t) + dl);
            return -h[0] - h[1] * dphi(-t);
        },
        -ds, ds, q);
    const double left = integrate([&](double z) { return -H(-ds, phi(-ds) - z)[1]; }, -dl, dl, q);
    const double bottom = integrate(
        [&](double t) {
            const auto h = H(t, phi(t) - dl);
            return h[0] + h[1] * dphi(t);
        },
        -ds, ds, q);
    return right + top + left + bottom;
}

double enclosedCurrent(const PlanarScalar& j, const CurvedRectangle& rect, const Quadrature& q) {
    check(q);
    check(rect);
    const auto& phi = rect.curve.phi;
    return integrate(
        [&](double t) {
            const double base = phi(t);
            return integrateAcross([&](double h) { return j(t, base + h); }, rect.dl, q.layer);
        },
        -rect.ds, rect.ds, q);
}

double tangentialDefect(const PlanarField& H, const PlanarScalar& j, const CurvedRectangle& rect,
                        const Quadrature& q) {
    const double above = -H(0.0, rect.dl)[0];
    const double below = -H(0.0, -rect.dl)[0];
    return std::abs(above - below - enclosedCurrent(j, rect, q) / (2.0 * rect.ds));
}

double flux(const SpatialField& D, const CurvedCylinder& cyl, const Quadrature& q) {
    check(q);
    check(cyl);
    const auto& sf = cyl.surface;
    const double r = cyl.r, dl = cyl.dl;
    // Top and bottom caps in polar coordinates; area element and outward
    // normal combine to s(-d1, 1, -d2) on top and s(d1, -1, d2) on the bottom.
    const double caps = integrate(
        [&](double a) {
            const double c = std::cos(a), s_ = std::sin(a);
            return integrate(
                [&](double s) {
                    const double t = s * c, e = s * s_;
                    const double base = sf.Phi(t, e), g1 = sf.d1(t, e), g2 = sf.d2(t, e);
                    const auto top = D(t, base + dl, e);
                    const auto bot = D(t, base - dl, e);
                    return s * ((-g1 * top[0] + top[1] - g2 * top[2]) + (g1 * bot[0] - bot[1] + g2 * bot[2]));
                },
                0.0, r, q);
        },
        0.0, 2.0 * kPi, q);
    const double side = integrate(
        [&](double a) {
            const double c = std::cos(a), s_ = std::sin(a);
            const double t = r * c, e = r * s_;
            const double base = sf.Phi(t, e);
            auto along = [&](double h) {
                const auto d = D(t, base + h, e);
                return r * (c * d[0] + s_ * d[2]);
            };
            return integrate(along, -dl, 0.0, q) + integrate(along, 0.0, dl, q);
        },
        0.0, 2.0 * kPi, q);
    return caps + side;
}

double enclosedCharge(const SpatialScalar& rhoc, const CurvedCylinder& cyl, const Quadrature& q) {
    check(q);
    check(cyl);
    const auto& sf = cyl.surface;
    return integrate(
        [&](double a) {
            const double c = std::cos(a), s_ = std::sin(a);
            return integrate(
                [&](double s) {
                    const double t = s * c, e = s * s_;
                    const double base = sf.Phi(t, e);
                    return s * integrateAcross([&](double h) { return rhoc(t, base + h, e); }, cyl.dl, q.layer);
                },
                0.0, cyl.r, q);
        },
        0.0, 2.0 * kPi, q);
}

double normalDefect(const SpatialField& D, const SpatialScalar& rhoc, const CurvedCylinder& cyl,
                    const Quadrature& q) {
    const double jump = D(0.0, cyl.dl, 0.0)[1] - D(0.0, -cyl.dl, 0.0)[1];
    return std::abs(jump - enclosedCharge(rhoc, cyl, q) / (kPi * cyl.r * cyl.r));
}

std::string RateStudy::verdict() const {
    if (identicallySatisfied) return "identically satisfied";
    char buf[64];
    std::snprintf(buf, sizeof buf, "slope %.4f", slope);
    return buf;
}

std::vector<double> geometricSizes(double first, double ratio, int count) {
    if (!(first > 0.0) || !(ratio > 0.0) || ratio == 1.0 || count < 1)
        throw ArgumentError("geometricSizes: need first > 0, ratio > 0, ratio != 1, count >= 1");
    std::vector<double> out;
    double v = first;
    for (int k = 0; k < count; ++k, v *= ratio) out.push_back(v);
    return out;
}

RateStudy rateStudy(const std::vector<double>& sizes, const std::function<double(double)>& defectAt) {
    if (sizes.size() < 4) throw ArgumentError("rateStudy: need at least 4 sizes");
    for (double s : sizes)
        if (!(s > 0.0)) throw ArgumentError("rateStudy: sizes must be positive");
    const double ratio = sizes[1] / sizes[0];
    for (std::size_t k = 1; k < sizes.size(); ++k)
        if (std::abs(sizes[k] / sizes[k - 1] / ratio - 1.0) > 1e-9 || ratio == 1.0)
            throw ArgumentError("rateStudy: sizes must form a geometric progression");
    RateStudy out;
    out.sizes = sizes;
    bool allTiny = true;
    for (double s : sizes) {
        const double d = defectAt(s);
        out.defects.push_back(d);
        if (!(d < 1e-12)) allTiny = false;
    }
    if (allTiny) {
        out.identicallySatisfied = true;
        return out;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const double x = std::log(sizes[k]);
        const double y = std::log(std::max(out.defects[k], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

std::vector<TangentialCase> tangentialCases(double w) {
    if (!(w > 0.0)) throw ArgumentError("layer thickness must be positive");
    const double kappa = 0.7;
    std::vector<TangentialCase> out;
    out.push_back({"continuous", Curve::parabola(1.0),
                   [](double t, double) { return std::array<double, 2>{std::cos(t), 0.3}; },
                   [](double, double) { return 0.0; }, 0});
    const Curve bent = Curve::parabola(1.0);
    out.push_back({"current-sheet", bent,
                   [=](double t, double z) {
                       return std::array<double, 2>{-kappa * step((z - bent.phi(t)) / w) + z * (1.0 + t * t),
                                                    0.3 + t * t};
                   },
                   [=](double t, double z) { return kappa * stepSlope((z - bent.phi(t)) / w) / w; }, 1});
    out.push_back({"flat-taylor", Curve::flat(),
                   [](double t, double z) { return std::array<double, 2>{std::sin(z) + t * z, 0.5 * t}; },
                   [](double, double) { return 0.0; }, 1});
    out.push_back({"quadratic", Curve::flat(),
                   [](double, double z) { return std::array<double, 2>{-z * std::abs(z), 0.0}; },
                   [](double, double) { return 0.0; }, 2});
    return out;
}

std::vector<NormalCase> normalCases(double w) {
    if (!(w > 0.0)) throw ArgumentError("layer thickness must be positive");
    const double omega = 1.3;
    std::vector<NormalCase> out;
    out.push_back({"continuous", Surface::paraboloid(1.0, 0.5),
                   [](double, double, double) { return std::array<double, 3>{0.2, 1.0, -0.4}; },
                   [](double, double, double) { return 0.0; }, 0});
    const Surface bent = Surface::paraboloid(1.0, 0.5);
    out.push_back({"charge-layer", bent,
                   [=](double t, double z, double e) {
                       return std::array<double, 3>{0.1 * t * e,
                                                    omega * step((z - bent.Phi(t, e)) / w) + z * (1.0 + t * t),
                                                    0.2 * e * z};
                   },
                   [=](double t, double z, double e) { return omega * stepSlope((z - bent.Phi(t, e)) / w) / w; }, 1});
    out.push_back({"flat-taylor", Surface::flat(),
                   [](double t, double z, double e) { return std::array<double, 3>{0.5 * t, 2.0 * z, -0.25 * e}; },
                   [](double, double, double) { return 2.25; }, 1});
    out.push_back({"quadratic", Surface::flat(),
                   [](double, double z, double) { return std::array<double, 3>{0.0, z * std::abs(z), 0.0}; },
                   [](double, double, double) { return 0.0; }, 2});
    return out;
}

std::vector<PillboxRow> runPillboxStudies(const std::vector<double>& sizes, double thickness) {
    std::vector<PillboxRow> rows;
    Quadrature q;
    q.layer = thickness;
    for (const auto& c : tangentialCases(thickness)) {
        const RateStudy r = rateStudy(sizes, [&](double h) {
            return tangentialDefect(c.H, c.j, CurvedRectangle{c.curve, 0.5 * h, 0.5 * h}, q);
        });
        for (std::size_t k = 0; k < sizes.size(); ++k) rows.push_back({"tangential", c.name, sizes[k], r.defects[k], r});
    }
    for (const auto& c : normalCases(thickness)) {
        const RateStudy r = rateStudy(sizes, [&](double h) {
            return normalDefect(c.D, c.rhoc, CurvedCylinder{c.surface, 0.5 * h, 0.5 * h}, q);
        });
        for (std::size_t k = 0; k < sizes.size(); ++k) rows.push_back({"normal", c.name, sizes[k], r.defects[k], r});
    }
    return rows;
}

}  // namespace pmhd
