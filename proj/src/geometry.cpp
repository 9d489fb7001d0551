#include "pmhd/geometry.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pmhd {

Isometry Isometry::fromAngle(double angle, Point translation) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Isometry{{c, -s, s, c}, translation};
}

Point Isometry::apply(Point x0) const {
    return {q[0] * x0[0] + q[1] * x0[1] + b[0], q[2] * x0[0] + q[3] * x0[1] + b[1]};
}

Point Isometry::toBody(Point x) const {
    const double dx = x[0] - b[0], dy = x[1] - b[1];
    return {q[0] * dx + q[2] * dy, q[1] * dx + q[3] * dy};
}

double Isometry::angle() const { return std::atan2(q[2], q[0]); }

double Isometry::orthogonalityDefect() const {
    const double a = q[0] * q[0] + q[2] * q[2] - 1.0;
    const double d = q[1] * q[1] + q[3] * q[3] - 1.0;
    const double o = q[0] * q[1] + q[2] * q[3];
    return std::max({std::abs(a), std::abs(d), std::abs(o)});
}

Shape Shape::disk(double r) {
    if (!(r > 0.0)) throw ConfigError("disk radius must be positive");
    Shape s;
    s.kind = ShapeKind::Disk;
    s.radius = r;
    return s;
}

Shape Shape::rectangle(double w, double h) {
    if (!(w > 0.0) || !(h > 0.0)) throw ConfigError("rectangle extents must be positive");
    Shape s;
    s.kind = ShapeKind::Rectangle;
    s.width = w;
    s.height = h;
    return s;
}

double Shape::signedDistance(Point x0) const {
    if (kind == ShapeKind::Disk) return radius - std::hypot(x0[0], x0[1]);
    const double qx = std::abs(x0[0]) - 0.5 * width;
    const double qy = std::abs(x0[1]) - 0.5 * height;
    const double outside = std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
    const double inside = std::min(std::max(qx, qy), 0.0);
    return -(outside + inside);
}

double Shape::area() const {
    return kind == ShapeKind::Disk ? std::numbers::pi * radius * radius : width * height;
}

std::string Shape::describe() const {
    std::ostringstream os;
    if (kind == ShapeKind::Disk)
        os << "disk(" << radius << ")";
    else
        os << "rectangle(" << width << ", " << height << ")";
    return os.str();
}

double signedDistance(const std::vector<RigidBody>& bodies, Point x) {
    double chi = -std::numeric_limits<double>::infinity();
    for (const auto& b : bodies) chi = std::max(chi, b.signedDistance(x));
    return chi;
}

ScalarField signedDistanceField(const Grid& grid, const std::vector<RigidBody>& bodies,
                                Location loc) {
    const double far = -std::hypot(grid.lengthX(), grid.lengthY());
    return ScalarField::sample(grid, loc, [&](double x, double y) {
        return std::max(far, signedDistance(bodies, {x, y}));
    });
}

double penaltyH(double z) { return z > 0.0 ? z * z * z : 0.0; }

namespace {

std::vector<Point> boundarySamples(const RigidBody& body, int n) {
    std::vector<Point> pts;
    pts.reserve(n);
    const Shape& s = body.shape;
    if (s.kind == ShapeKind::Disk) {
        for (int k = 0; k < n; ++k) {
            const double t = 2.0 * std::numbers::pi * k / n;
            pts.push_back(body.pose.apply({s.radius * std::cos(t), s.radius * std::sin(t)}));
        }
        return pts;
    }
    const double hw = 0.5 * s.width, hh = 0.5 * s.height;
    const int per = std::max(2, n / 4);
    for (int k = 0; k < per; ++k) {
        const double t = static_cast<double>(k) / per;
        pts.push_back(body.pose.apply({-hw + 2 * hw * t, -hh}));
        pts.push_back(body.pose.apply({hw, -hh + 2 * hh * t}));
        pts.push_back(body.pose.apply({hw - 2 * hw * t, hh}));
        pts.push_back(body.pose.apply({-hw, hh - 2 * hh * t}));
    }
    return pts;
}

constexpr int kBoundarySamples = 720;

}  // namespace

double minimumClearance(const Grid& grid, const std::vector<RigidBody>& bodies) {
    double gap = std::numeric_limits<double>::infinity();
    const double x1 = grid.x0 + grid.lengthX(), y1 = grid.y0 + grid.lengthY();
    for (std::size_t a = 0; a < bodies.size(); ++a) {
        const auto pts = boundarySamples(bodies[a], kBoundarySamples);
        for (const Point& p : pts) {
            gap = std::min({gap, p[0] - grid.x0, x1 - p[0], p[1] - grid.y0, y1 - p[1]});
            for (std::size_t c = 0; c < bodies.size(); ++c) {
                if (c != a) gap = std::min(gap, -bodies[c].signedDistance(p));
            }
        }
    }
    return gap;
}

void checkBodyConfiguration(const Grid& grid, const std::vector<RigidBody>& bodies) {
    for (const auto& b : bodies) {
        if (b.pose.orthogonalityDefect() > 1e-12 || std::abs(b.pose.det() - 1.0) > 1e-12)
            throw InvariantError("body " + std::to_string(b.id) + ": pose is not a proper rotation");
    }
    if (bodies.empty()) return;
    const double gap = minimumClearance(grid, bodies);
    if (!(gap > 0.0)) {
        throw InvariantError("bodies overlap or touch the walls (sampled clearance " +
                             std::to_string(gap) + " <= 0); contact is excluded by the model");
    }
}

VectorField mollify(const VectorField& u, double delta) {
    const Grid& g = u.grid();
    if (!(delta >= 2.0 * std::max(g.dx, g.dy))) {
        throw ArgumentError("mollification radius " + std::to_string(delta) +
                            " is below two cells; kernel unresolvable");
    }
    const int ra = static_cast<int>(std::floor(delta / g.dx));
    const int rb = static_cast<int>(std::floor(delta / g.dy));
    struct Tap {
        int a, b;
        double w;
    };
    std::vector<Tap> taps;
    for (int b = -rb; b <= rb; ++b)
        for (int a = -ra; a <= ra; ++a) {
            const double r2 = (a * g.dx) * (a * g.dx) + (b * g.dy) * (b * g.dy);
            const double s = 1.0 - r2 / (delta * delta);
            if (s > 0.0) taps.push_back({a, b, s * s});
        }
    auto smooth = [&](const ScalarField& f) {
        ScalarField out(g, f.location());
        for (int j = 0; j < f.sizeJ(); ++j)
            for (int i = 0; i < f.sizeI(); ++i) {
                double acc = 0.0, mass = 0.0;
                for (const Tap& t : taps) {
                    const int ii = i + t.a, jj = j + t.b;
                    if (ii < 0 || jj < 0 || ii >= f.sizeI() || jj >= f.sizeJ()) continue;
                    acc += t.w * f(ii, jj);
                    mass += t.w;
                }
                out(i, j) = acc / mass;
            }
        return out;
    };
    VectorField out(g);
    out.x() = smooth(u.x());
    out.y() = smooth(u.y());
    return out;
}

ScalarField volumeFraction(const Grid& grid, const RigidBody& body, double depth) {
    ScalarField f(grid, Location::Center);
    const double qx = 0.25 * grid.dx, qy = 0.25 * grid.dy;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const Point c = f.position(i, j);
            int inside = 0;
            for (int sy = -1; sy <= 1; sy += 2)
                for (int sx = -1; sx <= 1; sx += 2)
                    if (body.signedDistance({c[0] + sx * qx, c[1] + sy * qy}) > depth) ++inside;
            f(i, j) = 0.25 * inside;
        }
    return f;
}

BodyIntegrals bodyIntegrals(const ScalarField& rho, const RigidBody& body) {
    if (rho.location() != Location::Center) throw ArgumentError("bodyIntegrals: density must be cell-centered");
    const Grid& g = rho.grid();
    const ScalarField frac = volumeFraction(g, body);
    const double area = g.cellArea();
    BodyIntegrals out;
    double mx = 0.0, my = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double dm = rho(i, j) * frac(i, j) * area;
            const Point p = rho.position(i, j);
            out.m += dm;
            mx += dm * p[0];
            my += dm * p[1];
        }
    if (!(out.m > 0.0)) throw InvariantError("body " + std::to_string(body.id) + ": degenerate body (zero mass)");
    out.X = {mx / out.m, my / out.m};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double dm = rho(i, j) * frac(i, j) * area;
            const Point p = rho.position(i, j);
            const double rx = p[0] - out.X[0], ry = p[1] - out.X[1];
            out.J += dm * (rx * rx + ry * ry);
        }
    return out;
}

RigidVelocity extractRigidVelocity(const ScalarField& rho, const VectorField& u,
                                   const RigidBody& body) {
    const BodyIntegrals bi = bodyIntegrals(rho, body);
    const Grid& g = rho.grid();
    const ScalarField frac = volumeFraction(g, body);
    const ScalarField uc = faceXToCenter(u.x());
    const ScalarField vc = faceYToCenter(u.y());
    const double area = g.cellArea();
    double px = 0.0, py = 0.0, lz = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double dm = rho(i, j) * frac(i, j) * area;
            if (dm == 0.0) continue;
            const Point p = rho.position(i, j);
            px += dm * uc(i, j);
            py += dm * vc(i, j);
            lz += dm * ((p[0] - bi.X[0]) * vc(i, j) - (p[1] - bi.X[1]) * uc(i, j));
        }
    RigidVelocity out;
    out.V = {px / bi.m, py / bi.m};
    out.w = bi.J > 0.0 ? lz / bi.J : 0.0;
    return out;
}

RigidBody advanceFlowMap(const RigidBody& body, Point V, double w, double dt, Point about) {
    if (!(dt > 0.0)) throw ArgumentError("advanceFlowMap: dt must be positive");
    RigidBody out = body;
    const double c = std::cos(w * dt), s = std::sin(w * dt);
    const auto& q = body.pose.q;
    std::array<double, 4> rq{c * q[0] - s * q[2], c * q[1] - s * q[3],
                             s * q[0] + c * q[2], s * q[1] + c * q[3]};
    const double ang = std::atan2(rq[2] - rq[1], rq[0] + rq[3]);
    const double rx = body.pose.b[0] - about[0], ry = body.pose.b[1] - about[1];
    const Point nb{about[0] + c * rx - s * ry + V[0] * dt, about[1] + s * rx + c * ry + V[1] * dt};
    out.pose = Isometry::fromAngle(ang, nb);
    out.V = V;
    out.w = w;
    return out;
}

RigidBody advanceFlowMap(const RigidBody& body, Point V, double w, double dt) {
    return advanceFlowMap(body, V, w, dt, body.pose.b);
}

VectorField rigidVelocityField(const Grid& grid, Point V, double w, Point X) {
    return VectorField::sample(grid, [&](double x, double y) {
        return std::array{V[0] - w * (y - X[1]), V[1] + w * (x - X[0])};
    });
}

double rigidityResidual(const VectorField& u, const RigidBody& body) {
    const Grid& g = u.grid();
    const TensorField d = symgrad(u);
    const ScalarField frac = volumeFraction(g, body, body.delta);
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s += frac(i, j) * d.normSquaredAt(i, j);
    return std::sqrt(s * g.cellArea());
}

}  // namespace pmhd
