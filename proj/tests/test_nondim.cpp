#include "doctest.h"
#include "support.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/nondim.hpp"

#include <cmath>
#include <random>

using namespace pmhd;
using testing_support::relDiff;

namespace {

Material unitMaterial() {
    Material m;
    m.mu0 = 1.0;
    m.eps0 = 1.0;
    return m;
}

}  // namespace

TEST_CASE("unit scales close to unit derived scales") {
    const auto s = closeScales(1.0, 1.0, 1.0, unitMaterial());
    CHECK(s.Ebar == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.jbar == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.ubar == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("closure keeps E/B, u and x/t consistent") {
    const auto s = closeScales(2.0, 1.0, 3.0, unitMaterial());
    CHECK(s.ubar == 2.0);
    CHECK(s.Ebar == 6.0);
    CHECK(relDiff(s.Ebar / s.Bbar, s.ubar) <= 1e-14);

    Material water;
    water.sigma = 5.5;
    water.epsr = 80;
    for (double x : {1e-3, 0.37, 12.0})
        for (double t : {1e-4, 0.9, 300.0}) {
            const auto c = closeScales(x, t, 0.013, water);
            CHECK(relDiff(c.Ebar / c.Bbar, c.ubar) <= 1e-14);
            CHECK(relDiff(c.ubar, x / t) <= 1e-14);
            CHECK(relDiff(c.jbar, c.Bbar / (water.mu() * x)) <= 1e-14);
        }
}

TEST_CASE("charge density scale uses the fluid permittivity") {
    Material m = unitMaterial();
    m.eps0 = 2.0;
    const auto s = closeScales(1.0, 1.0, 1.0, m);
    CHECK(s.rhocbar == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("velocity closure reaches the same closed set") {
    Material m;
    m.sigma = 1e6;
    const auto a = closeScales(0.2, 0.05, 0.3, m);
    const auto b = closeScalesFromVelocity(0.2, a.ubar, a.jbar, m);
    for (auto [x, y] : {std::pair{a.tbar, b.tbar}, {a.Bbar, b.Bbar}, {a.Ebar, b.Ebar}, {a.rhocbar, b.rhocbar}})
        CHECK(relDiff(x, y) <= 1e-14);
}

TEST_CASE("non-positive closure inputs are rejected") {
    CHECK_THROWS_AS(closeScales(0.0, 1.0, 1.0, Material{}), ArgumentError);
    CHECK_THROWS_AS(closeScales(1.0, -1.0, 1.0, Material{}), ArgumentError);
    CHECK_THROWS_AS(closeScales(1.0, 1.0, 0.0, Material{}), ArgumentError);
}

TEST_CASE("displacement ratio is the squared speed ratio") {
    Material vac;
    SUBCASE("one metre per second") {
        const auto s = closeScales(1.0, 1.0, 1.0, vac);
        const auto r = checkAssumptions(s);
        CHECK(r.displacementRatio == doctest::Approx(1.1e-17).epsilon(0.02));
        CHECK((r.speed == Verdict::Holds));
        CHECK((r.material == Verdict::Holds));
        CHECK(r.murEpsr == 1.0);
    }
    SUBCASE("blood flow speed") {
        const auto s = closeScales(0.01, 0.02, 1e-3, vac);
        CHECK(displacementCurrentRatio(s) == doctest::Approx(2.78e-18).epsilon(0.01));
    }
    SUBCASE("three hundred metres per second") {
        const auto s = closeScales(300.0, 1.0, 1.0, vac);
        const double r = s.ubar / s.c();
        CHECK(displacementCurrentRatio(s) == r * r);
        CHECK(displacementCurrentRatio(s) == doctest::Approx(1e-12).epsilon(0.01));
    }
    SUBCASE("speed of light") {
        const double c = 1.0 / std::sqrt(vac.mu() * vac.eps());
        const auto s = closeScales(c, 1.0, 1.0, vac);
        CHECK(displacementCurrentRatio(s) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK((checkAssumptions(s).speed == Verdict::Violated));
    }
}

TEST_CASE("assumption verdict thresholds") {
    Material vac;
    const double c = 1.0 / std::sqrt(vac.mu() * vac.eps());
    CHECK((checkAssumptions(closeScales(0.05 * c, 1.0, 1.0, vac)).speed == Verdict::Marginal));
    CHECK((checkAssumptions(closeScales(0.5 * c, 1.0, 1.0, vac)).speed == Verdict::Violated));
    Material m;
    m.epsr = 1.1;
    CHECK((checkAssumptions(closeScales(1.0, 1.0, 1.0, m)).material == Verdict::Marginal));
    m.epsr = 1.5;
    CHECK((checkAssumptions(closeScales(1.0, 1.0, 1.0, m)).material == Verdict::Violated));
    AssumptionThresholds loose;
    loose.materialHolds = 0.6;
    CHECK((checkAssumptions(closeScales(1.0, 1.0, 1.0, m), loose).material == Verdict::Holds));
}

TEST_CASE("report lists scales and flags free ones") {
    FreeScales f;
    f.rhobar = 1000;
    const auto s = closeScales(0.1, 1.0, 0.01, Material{}, f);
    const std::string text = formatReport(s, checkAssumptions(s));
    CHECK(text.find("ubar: ") != std::string::npos);
    CHECK(text.find("displacement_ratio: ") != std::string::npos);
    CHECK(text.find("rhobar: 1000 (user-supplied, no closure relation)") != std::string::npos);
    CHECK(text.find("pbar: unset") != std::string::npos);
    CHECK(text.find("verdict_speed: holds") != std::string::npos);
}

TEST_CASE("field scaling") {
    FreeScales f;
    f.rhobar = 2.0;
    const auto s = closeScales(0.5, 0.25, 3.0, Material{}, f);
    const Grid g = Grid::unitSquare(6);

    const ScalarField rho = testing_support::randomField(g, Location::Center, 3);
    const ScalarField half = nondimensionalize(rho, Quantity::Density, s);
    for (std::size_t k = 0; k < rho.size(); ++k) CHECK(half.values()[k] == rho.values()[k] / 2.0);

    const ScalarField zero(g, Location::Node);
    CHECK(nondimensionalize(zero, Quantity::MagneticField, s).maxAbs() == 0.0);

    CHECK_THROWS_AS(nondimensionalize(rho, Quantity::Pressure, s), ArgumentError);
    CHECK_THROWS_AS(scaleOf(s, Quantity::HField), ArgumentError);

    for (unsigned seed = 1; seed <= 5; ++seed) {
        const VectorField u = testing_support::randomVector(g, seed);
        const VectorField back = redimensionalize(nondimensionalize(u, Quantity::Velocity, s), Quantity::Velocity, s);
        for (std::size_t k = 0; k < u.x().size(); ++k)
            CHECK(relDiff(back.x().values()[k], u.x().values()[k]) <= 1e-14);
        for (std::size_t k = 0; k < u.y().size(); ++k)
            CHECK(relDiff(back.y().values()[k], u.y().values()[k]) <= 1e-14);
    }
}

TEST_CASE("problem mapping rejects the eps regularizer and needs a density scale") {
    const Grid g = Grid::unitSquare(4);
    SchemeParams p;
    p.eps = 0.01;
    MechanicalState m{ScalarField(g, Location::Center, 1.0), VectorField(g), {}, 0.0};
    MagneticState mag{ScalarField(g, Location::Node), 0};
    Forces f;
    FreeScales fs;
    fs.rhobar = 1.0;
    CHECK_THROWS_AS(nondimensionalizeProblem(g, p, m, mag, f, closeScales(1, 1, 1, Material{}, fs)), ArgumentError);
    p.eps = 0.0;
    CHECK_THROWS_AS(nondimensionalizeProblem(g, p, m, mag, f, closeScales(1, 1, 1, Material{})), ArgumentError);
    CHECK_NOTHROW(nondimensionalizeProblem(g, p, m, mag, f, closeScales(1, 1, 1, Material{}, fs)));
}
