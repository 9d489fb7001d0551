#include "pmhd/fields.hpp"

#include "pmhd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pmhd {

void Grid::validate() const {
    if (nx < 4 || ny < 4) {
        throw ArgumentError("grid needs at least 4 cells per direction, got " +
                            std::to_string(nx) + " x " + std::to_string(ny));
    }
    if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy)) {
        throw ArgumentError("grid spacings must be positive and finite");
    }
}

Grid Grid::unitSquare(int n) {
    Grid g{n, n, 1.0 / n, 1.0 / n, 0.0, 0.0};
    g.validate();
    return g;
}

std::string toString(Location loc) {
    switch (loc) {
        case Location::Center: return "center";
        case Location::Node: return "node";
        case Location::XFace: return "xface";
        case Location::YFace: return "yface";
    }
    return "center";
}

Location locationFromString(const std::string& s) {
    if (s == "center") return Location::Center;
    if (s == "node") return Location::Node;
    if (s == "xface") return Location::XFace;
    if (s == "yface") return Location::YFace;
    throw ArgumentError("unknown field location tag: " + s);
}

ScalarField::ScalarField(const Grid& grid, Location loc, double value) : grid_(grid), loc_(loc) {
    grid.validate();
    switch (loc) {
        case Location::Center: ni_ = grid.nx; nj_ = grid.ny; break;
        case Location::Node: ni_ = grid.nx + 1; nj_ = grid.ny + 1; break;
        case Location::XFace: ni_ = grid.nx + 1; nj_ = grid.ny; break;
        case Location::YFace: ni_ = grid.nx; nj_ = grid.ny + 1; break;
    }
    values_.assign(static_cast<std::size_t>(ni_) * nj_, value);
}

Point ScalarField::position(int i, int j) const {
    const double hx = (loc_ == Location::Center || loc_ == Location::YFace) ? 0.5 : 0.0;
    const double hy = (loc_ == Location::Center || loc_ == Location::XFace) ? 0.5 : 0.0;
    return {grid_.x0 + (i + hx) * grid_.dx, grid_.y0 + (j + hy) * grid_.dy};
}

bool ScalarField::allFinite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::maxAbs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::minValue() const {
    return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

double ScalarField::sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
}

static void requireCompatible(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid()) || a.location() != b.location()) {
        throw ArgumentError("field arithmetic on mismatched grids or locations");
    }
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    requireCompatible(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    requireCompatible(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

VectorField::VectorField(const Grid& grid, double vx, double vy)
    : x_(grid, Location::XFace, vx), y_(grid, Location::YFace, vy) {}

double VectorField::maxAbs() const { return std::max(x_.maxAbs(), y_.maxAbs()); }

void VectorField::zeroNormalOnBoundary() {
    const Grid& g = grid();
    for (int j = 0; j < g.ny; ++j) {
        x_(0, j) = 0.0;
        x_(g.nx, j) = 0.0;
    }
    for (int i = 0; i < g.nx; ++i) {
        y_(i, 0) = 0.0;
        y_(i, g.ny) = 0.0;
    }
}

VectorField& VectorField::operator+=(const VectorField& o) {
    x_ += o.x_;
    y_ += o.y_;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    x_ *= s;
    y_ *= s;
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

}  // namespace pmhd
