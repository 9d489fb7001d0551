#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pmhd {

using Point = std::array<double, 2>;

/// Uniform rectangular grid covering [x0, x0 + nx*dx] x [y0, y0 + ny*dy].
struct Grid {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;

    /// Throws ArgumentError unless nx, ny >= 4 and dx, dy > 0.
    void validate() const;
    double cellArea() const { return dx * dy; }
    double lengthX() const { return nx * dx; }
    double lengthY() const { return ny * dy; }

    static Grid unitSquare(int n);
    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Storage location on the MAC grid.
///   Center: nx x ny cell centers
///   Node:   (nx+1) x (ny+1) cell corners
///   XFace:  (nx+1) x ny faces normal to x (first vector component)
///   YFace:  nx x (ny+1) faces normal to y (second vector component)
enum class Location { Center, Node, XFace, YFace };

std::string toString(Location loc);
Location locationFromString(const std::string& s);

class ScalarField {
public:
    ScalarField() = default;
    ScalarField(const Grid& grid, Location loc, double value = 0.0);

    template <class F>
    static ScalarField sample(const Grid& grid, Location loc, F&& fn) {
        ScalarField f(grid, loc);
        for (int j = 0; j < f.sizeJ(); ++j)
            for (int i = 0; i < f.sizeI(); ++i) {
                const Point p = f.position(i, j);
                f(i, j) = fn(p[0], p[1]);
            }
        return f;
    }

    const Grid& grid() const { return grid_; }
    Location location() const { return loc_; }
    int sizeI() const { return ni_; }
    int sizeJ() const { return nj_; }
    std::size_t size() const { return values_.size(); }

    double& operator()(int i, int j) { return values_[index(i, j)]; }
    double operator()(int i, int j) const { return values_[index(i, j)]; }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * ni_ + i;
    }
    Point position(int i, int j) const;

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    bool allFinite() const;
    double maxAbs() const;
    double minValue() const;
    /// Plain (unweighted) sum in storage order.
    double sum() const;

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double s);

private:
    Grid grid_{};
    Location loc_ = Location::Center;
    int ni_ = 0;
    int nj_ = 0;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// MAC-staggered vector field: x component on XFace, y component on YFace.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const Grid& grid, double vx = 0.0, double vy = 0.0);

    template <class F>
    static VectorField sample(const Grid& grid, F&& fn) {
        VectorField v(grid);
        v.x_ = ScalarField::sample(grid, Location::XFace,
                                   [&](double x, double y) { return fn(x, y)[0]; });
        v.y_ = ScalarField::sample(grid, Location::YFace,
                                   [&](double x, double y) { return fn(x, y)[1]; });
        return v;
    }

    const Grid& grid() const { return x_.grid(); }
    ScalarField& x() { return x_; }
    ScalarField& y() { return y_; }
    const ScalarField& x() const { return x_; }
    const ScalarField& y() const { return y_; }

    bool allFinite() const { return x_.allFinite() && y_.allFinite(); }
    double maxAbs() const;
    /// Zero the normal component on the four walls.
    void zeroNormalOnBoundary();

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double s);

private:
    ScalarField x_;
    ScalarField y_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Cell-centered symmetric 2x2 tensor; only xx, yy, xy are stored.
struct TensorField {
    explicit TensorField(const Grid& grid)
        : xx(grid, Location::Center), yy(grid, Location::Center), xy(grid, Location::Center) {}
    ScalarField xx;
    ScalarField yy;
    ScalarField xy;

    const Grid& grid() const { return xx.grid(); }
    /// Frobenius norm squared per cell: xx^2 + yy^2 + 2 xy^2.
    double normSquaredAt(int i, int j) const {
        return xx(i, j) * xx(i, j) + yy(i, j) * yy(i, j) + 2.0 * xy(i, j) * xy(i, j);
    }
};

}  // namespace pmhd
