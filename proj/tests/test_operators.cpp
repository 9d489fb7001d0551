#include "doctest.h"
#include "support.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/operators.hpp"

#include <cmath>
#include <numbers>

using namespace pmhd;
using testing_support::fittedSlope;

namespace {

constexpr double kPi = std::numbers::pi;

double maxInteriorX(const ScalarField& f, const std::function<double(double, double)>& ref) {
    double e = 0.0;
    for (int j = 0; j < f.sizeJ(); ++j)
        for (int i = 1; i + 1 < f.sizeI(); ++i) {
            const Point p = f.position(i, j);
            e = std::max(e, std::abs(f(i, j) - ref(p[0], p[1])));
        }
    return e;
}

double maxInteriorY(const ScalarField& f, const std::function<double(double, double)>& ref) {
    double e = 0.0;
    for (int j = 1; j + 1 < f.sizeJ(); ++j)
        for (int i = 0; i < f.sizeI(); ++i) {
            const Point p = f.position(i, j);
            e = std::max(e, std::abs(f(i, j) - ref(p[0], p[1])));
        }
    return e;
}

double maxAll(const ScalarField& f, const std::function<double(double, double)>& ref) {
    double e = 0.0;
    for (int j = 0; j < f.sizeJ(); ++j)
        for (int i = 0; i < f.sizeI(); ++i) {
            const Point p = f.position(i, j);
            e = std::max(e, std::abs(f(i, j) - ref(p[0], p[1])));
        }
    return e;
}

const std::vector<int> kSizes{16, 32, 64, 128};

std::vector<double> spacings() {
    std::vector<double> h;
    for (int n : kSizes) h.push_back(1.0 / n);
    return h;
}

}  // namespace

TEST_CASE("grid and field construction") {
    CHECK_THROWS_AS(ScalarField(Grid{3, 8, 0.1, 0.1, 0, 0}, Location::Center), ArgumentError);
    CHECK_THROWS_AS(ScalarField(Grid{8, 8, 0.0, 0.1, 0, 0}, Location::Center), ArgumentError);
    const Grid g = Grid::unitSquare(8);
    CHECK(ScalarField(g, Location::Node).size() == 81);
    CHECK(ScalarField(g, Location::XFace).size() == 72);
    CHECK(ScalarField(g, Location::YFace).size() == 72);
    CHECK((locationFromString(toString(Location::YFace)) == Location::YFace));
    CHECK_THROWS_AS(locationFromString("edge"), ArgumentError);
    ScalarField a(g, Location::Center, 1.0);
    CHECK_THROWS_AS(a += ScalarField(g, Location::Node), ArgumentError);
}

TEST_CASE("grad: constants, linears, quadratic refinement") {
    const Grid g = Grid::unitSquare(16);
    CHECK(grad(ScalarField(g, Location::Center, 5.0)).maxAbs() == 0.0);

    const VectorField gx = grad(ScalarField::sample(g, Location::Center, [](double x, double) { return x; }));
    CHECK(maxInteriorX(gx.x(), [](double, double) { return 1.0; }) < 1e-12);
    CHECK(gx.y().maxAbs() < 1e-12);

    std::vector<double> err;
    for (int n : kSizes) {
        const Grid gn = Grid::unitSquare(n);
        const auto f = ScalarField::sample(gn, Location::Center,
                                           [](double x, double y) { return std::sin(kPi * x) * std::cos(2 * y); });
        const VectorField gr = grad(f);
        const double e1 = maxInteriorX(gr.x(), [](double x, double y) { return kPi * std::cos(kPi * x) * std::cos(2 * y); });
        const double e2 = maxInteriorY(gr.y(), [](double x, double y) { return -2 * std::sin(kPi * x) * std::sin(2 * y); });
        err.push_back(std::max(e1, e2));
    }
    CHECK(fittedSlope(spacings(), err) == doctest::Approx(2.0).epsilon(0.1));

    // x^2 on 64^2: error is exactly zero for centered differences of quadratics
    const Grid g64 = Grid::unitSquare(64);
    const auto q = grad(ScalarField::sample(g64, Location::Center, [](double x, double) { return x * x; }));
    CHECK(maxInteriorX(q.x(), [](double x, double) { return 2 * x; }) < 1e-11);
}

TEST_CASE("div: constants, linears, adjointness, refinement") {
    const Grid g = Grid::unitSquare(16);
    CHECK(div(VectorField(g, 1.0, 1.0)).maxAbs() < 1e-12);
    const auto lin = VectorField::sample(g, [](double x, double y) { return std::array{x, y}; });
    CHECK(maxAll(div(lin), [](double, double) { return 2.0; }) < 1e-12);

    for (unsigned seed = 1; seed <= 5; ++seed) {
        const auto f = testing_support::randomField(g, Location::Center, seed);
        auto v = testing_support::randomVector(g, seed + 100);
        v.zeroNormalOnBoundary();
        const double lhs = innerFaces(grad(f), v);
        const double rhs = innerCells(f, div(v));
        const double scale = std::sqrt(innerCells(f, f) * innerFaces(v, v));
        CHECK(std::abs(lhs + rhs) <= 1e-12 * scale);
    }

    std::vector<double> err;
    for (int n : kSizes) {
        const Grid gn = Grid::unitSquare(n);
        const auto v = VectorField::sample(gn, [](double x, double y) {
            return std::array{std::sin(2 * x) * y, std::cos(3 * y) + x};
        });
        err.push_back(maxAll(div(v), [](double x, double y) { return 2 * std::cos(2 * x) * y - 3 * std::sin(3 * y); }));
    }
    CHECK(fittedSlope(spacings(), err) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("gradPerp: identities") {
    const Grid g = Grid::unitSquare(16);
    CHECK(gradPerp(ScalarField(g, Location::Node, 3.0)).maxAbs() == 0.0);
    const auto b = gradPerp(ScalarField::sample(g, Location::Node, [](double x, double) { return x; }));
    CHECK(b.x().maxAbs() < 1e-12);
    CHECK(maxAll(b.y(), [](double, double) { return -1.0; }) < 1e-12);
    for (unsigned seed = 1; seed <= 5; ++seed) {
        const auto psi = testing_support::randomField(g, Location::Node, seed);
        CHECK(maxAbsDivergence(gradPerp(psi)) <= 1e-13 * std::max(1.0, 1.0 / g.dx));
    }
    CHECK_THROWS_AS(gradPerp(ScalarField(g, Location::Center)), ArgumentError);

    std::vector<double> err;
    for (int n : kSizes) {
        const Grid gn = Grid::unitSquare(n);
        const auto psi = ScalarField::sample(gn, Location::Node, [](double x, double y) { return std::sin(x) * std::exp(y); });
        const auto bn = gradPerp(psi);
        const double e1 = maxAll(bn.x(), [](double x, double y) { return std::sin(x) * std::exp(y); });
        const double e2 = maxAll(bn.y(), [](double x, double y) { return -std::cos(x) * std::exp(y); });
        err.push_back(std::max(e1, e2));
    }
    CHECK(fittedSlope(spacings(), err) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("curl2d: constants, rotation, smooth refinement") {
    const Grid g = Grid::unitSquare(16);
    CHECK(curl2d(VectorField(g, 2.0, -1.0)).maxAbs() < 1e-12);
    const auto rot = VectorField::sample(g, [](double x, double y) { return std::array{-y, x}; });
    CHECK(maxAll(curl2d(rot), [](double, double) { return 2.0; }) < 1e-11);

    std::vector<double> err;
    for (int n : kSizes) {
        const Grid gn = Grid::unitSquare(n);
        const auto v = VectorField::sample(gn, [](double x, double y) { return std::array{std::sin(y), std::sin(x)}; });
        err.push_back(maxAll(curl2d(v), [](double x, double y) { return std::cos(x) - std::cos(y); }));
    }
    CHECK(fittedSlope(spacings(), err) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("symgrad: rigid fields, stretching, refinement") {
    const Grid g = Grid::unitSquare(16);
    const TensorField c = symgrad(VectorField(g, 1.5, -2.0));
    CHECK(c.xx.maxAbs() + c.yy.maxAbs() + c.xy.maxAbs() < 1e-12);

    const auto rigid = VectorField::sample(g, [](double x, double y) {
        return std::array{0.3 - 1.7 * (y - 0.4), -0.2 + 1.7 * (x - 0.6)};
    });
    const TensorField r = symgrad(rigid);
    CHECK(r.xx.maxAbs() + r.yy.maxAbs() + r.xy.maxAbs() < 1e-11);

    const TensorField s = symgrad(VectorField::sample(g, [](double x, double) { return std::array{x, 0.0}; }));
    CHECK(maxAll(s.xx, [](double, double) { return 1.0; }) < 1e-12);
    CHECK(s.yy.maxAbs() < 1e-12);
    CHECK(s.xy.maxAbs() < 1e-12);

    std::vector<double> err;
    for (int n : kSizes) {
        const Grid gn = Grid::unitSquare(n);
        const auto v = VectorField::sample(gn, [](double x, double y) {
            return std::array{std::sin(x + 2 * y), std::cos(x * y)};
        });
        const TensorField t = symgrad(v);
        const double exx = maxAll(t.xx, [](double x, double y) { return std::cos(x + 2 * y); });
        const double eyy = maxAll(t.yy, [](double x, double y) { return -x * std::sin(x * y); });
        const double exy = maxAll(t.xy, [](double x, double y) {
            return 0.5 * (2 * std::cos(x + 2 * y) - y * std::sin(x * y));
        });
        err.push_back(std::max({exx, eyy, exy}));
    }
    CHECK(fittedSlope(spacings(), err) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("laplacian: polynomials, composition, refinement") {
    const Grid g = Grid::unitSquare(16);
    auto interiorMax = [&](const ScalarField& f, double ref) {
        double e = 0.0;
        for (int j = 1; j + 1 < g.ny; ++j)
            for (int i = 1; i + 1 < g.nx; ++i) e = std::max(e, std::abs(f(i, j) - ref));
        return e;
    };
    CHECK(interiorMax(laplacian(ScalarField::sample(g, Location::Center, [](double x, double y) { return 2 * x - y; })), 0.0) < 1e-10);
    CHECK(interiorMax(laplacian(ScalarField::sample(g, Location::Center, [](double x, double y) { return x * x + y * y; })), 4.0) < 1e-10);

    for (unsigned seed = 1; seed <= 3; ++seed) {
        const auto f = testing_support::randomField(g, Location::Center, seed);
        const auto a = laplacian(f);
        const auto b = div(grad(f));
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.values()[k] == b.values()[k]);
    }

    std::vector<double> err;
    for (int n : kSizes) {
        const Grid gn = Grid::unitSquare(n);
        const auto f = ScalarField::sample(gn, Location::Center,
                                           [](double x, double y) { return std::cos(kPi * x) * std::cos(2 * kPi * y); });
        err.push_back(maxAll(laplacian(f), [](double x, double y) {
            return -5 * kPi * kPi * std::cos(kPi * x) * std::cos(2 * kPi * y);
        }));
    }
    CHECK(fittedSlope(spacings(), err) == doctest::Approx(2.0).epsilon(0.1));
}
