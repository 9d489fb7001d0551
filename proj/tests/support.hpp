#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "pmhd/fields.hpp"

namespace testing_support {

// Least-squares slope of log(err) against log(h).
inline double fittedSlope(const std::vector<double>& h, const std::vector<double>& err) {
    const std::size_t n = h.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = std::log(h[k]);
        const double y = std::log(err[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline pmhd::ScalarField randomField(const pmhd::Grid& g, pmhd::Location loc, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    pmhd::ScalarField f(g, loc);
    for (double& v : f.values()) v = d(rng);
    return f;
}

inline pmhd::VectorField randomVector(const pmhd::Grid& g, unsigned seed) {
    pmhd::VectorField v(g);
    v.x() = randomField(g, pmhd::Location::XFace, seed);
    v.y() = randomField(g, pmhd::Location::YFace, seed + 7919);
    return v;
}

inline double relDiff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace testing_support
