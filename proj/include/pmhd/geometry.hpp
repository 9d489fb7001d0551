#pragma once

#include "pmhd/fields.hpp"

#include <array>
#include <string>
#include <vector>

namespace pmhd {

/// Orientation-preserving isometry x = Q x0 + b. Q is stored row-major.
struct Isometry {
    std::array<double, 4> q{1.0, 0.0, 0.0, 1.0};
    Point b{0.0, 0.0};

    static Isometry fromAngle(double angle, Point translation);
    Point apply(Point x0) const;
    /// Body-frame coordinates of a lab-frame point.
    Point toBody(Point x) const;
    double angle() const;
    double det() const { return q[0] * q[3] - q[1] * q[2]; }
    /// max |Q^T Q - I| entry.
    double orthogonalityDefect() const;
};

enum class ShapeKind { Disk, Rectangle };

struct Shape {
    ShapeKind kind = ShapeKind::Disk;
    double radius = 0.0;  // disk
    double width = 0.0;   // rectangle, full extents
    double height = 0.0;

    static Shape disk(double r);
    static Shape rectangle(double w, double h);
    /// Reference signed distance in the body frame; positive inside.
    double signedDistance(Point x0) const;
    double area() const;
    std::string describe() const;
};

struct RigidBody {
    int id = 0;
    Shape shape;
    Isometry pose;
    Point V{0.0, 0.0};
    double w = 0.0;
    double delta = 0.0;

    double signedDistance(Point x) const { return shape.signedDistance(pose.toBody(x)); }
    Point center() const { return pose.b; }
};

struct BodyIntegrals {
    double m = 0.0;
    Point X{0.0, 0.0};
    double J = 0.0;
};

/// Max over bodies of the signed distance; -infinity with no bodies.
double signedDistance(const std::vector<RigidBody>& bodies, Point x);

/// chi sampled at the given location. With no bodies the field is filled
/// with minus the domain diameter so it stays finite.
ScalarField signedDistanceField(const Grid& grid, const std::vector<RigidBody>& bodies,
                                Location loc = Location::Center);

/// Cubic hinge max(z, 0)^3.
double penaltyH(double z);

/// Throws InvariantError when two bodies overlap or a body touches the walls.
/// Clearance is estimated from boundary samples of each shape.
void checkBodyConfiguration(const Grid& grid, const std::vector<RigidBody>& bodies);

/// Smallest sampled gap between any two bodies or between a body and the walls.
double minimumClearance(const Grid& grid, const std::vector<RigidBody>& bodies);

/// Convolution with the radial bump (1 - r^2/delta^2)^2 supported in r < delta,
/// normalized to unit discrete mass. Near walls the kernel is truncated and
/// renormalized.
VectorField mollify(const VectorField& u, double delta);

/// Per-cell volume fraction from 4 sub-cell samples of the set where the
/// signed distance exceeds `depth` (the body itself for depth 0).
ScalarField volumeFraction(const Grid& grid, const RigidBody& body, double depth = 0.0);

BodyIntegrals bodyIntegrals(const ScalarField& rho, const RigidBody& body);

struct RigidVelocity {
    Point V{0.0, 0.0};
    double w = 0.0;
};

RigidVelocity extractRigidVelocity(const ScalarField& rho, const VectorField& u,
                                   const RigidBody& body);

/// Exact rigid motion over dt: rotate by w*dt about `about`, translate by V*dt,
/// then re-project the rotation onto SO(2).
RigidBody advanceFlowMap(const RigidBody& body, Point V, double w, double dt, Point about);
RigidBody advanceFlowMap(const RigidBody& body, Point V, double w, double dt);

/// u = V + w x (x - X) sampled on faces.
VectorField rigidVelocityField(const Grid& grid, Point V, double w, Point X);

/// L2 norm of symgrad(u) over the body's delta-kernel (points deeper than
/// body.delta), weighted by volume fraction.
double rigidityResidual(const VectorField& u, const RigidBody& body);

}  // namespace pmhd
