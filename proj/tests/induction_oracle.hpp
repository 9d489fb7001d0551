#pragma once

#include "support.hpp"

#include "pmhd/induction.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace testing_support {

using namespace pmhd;

// Dense reference for the potential update, assembled node by node.
struct DenseOracle {
    Grid g;
    SchemeParams p;

    int id(int i, int j) const { return (j - 1) * (g.nx - 1) + (i - 1); }
    int size() const { return (g.nx - 1) * (g.ny - 1); }

    Eigen::MatrixXd minusLaplacian() const {
        const int n = size();
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (int j = 1; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i) {
                const int r = id(i, j);
                a(r, r) = 2 / (g.dx * g.dx) + 2 / (g.dy * g.dy);
                if (i > 1) a(r, id(i - 1, j)) = -1 / (g.dx * g.dx);
                if (i < g.nx - 1) a(r, id(i + 1, j)) = -1 / (g.dx * g.dx);
                if (j > 1) a(r, id(i, j - 1)) = -1 / (g.dy * g.dy);
                if (j < g.ny - 1) a(r, id(i, j + 1)) = -1 / (g.dy * g.dy);
            }
        return a;
    }

    // u1 B2 - u2 B1 at node (i, j), with B from one-sided differences of psi
    double transport(const ScalarField& psi, const VectorField& u, int i, int j) const {
        auto b1 = [&](int ii, int jj) { return (psi(ii, jj + 1) - psi(ii, jj)) / g.dy; };
        auto b2 = [&](int ii, int jj) { return -(psi(ii + 1, jj) - psi(ii, jj)) / g.dx; };
        const double u1 = 0.5 * (u.x()(i, j - 1) + u.x()(i, j));
        const double u2 = 0.5 * (u.y()(i - 1, j) + u.y()(i, j));
        const double B1 = 0.5 * (b1(i, j - 1) + b1(i, j));
        const double B2 = 0.5 * (b2(i - 1, j) + b2(i, j));
        return u1 * B2 - u2 * B1;
    }

    ScalarField step(const ScalarField& psi, const VectorField& u, const ScalarField& J) const {
        const int n = size();
        const double pb = psi(0, 0);
        const Eigen::MatrixXd a = minusLaplacian();
        Eigen::VectorXd phi0(n), rhs(n);
        for (int j = 1; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i) {
                phi0[id(i, j)] = psi(i, j) - pb;
                rhs[id(i, j)] = (psi(i, j) - pb) / p.dt + transport(psi, u, i, j) + J(i, j) / p.sigma;
            }
        const Eigen::MatrixXd base = Eigen::MatrixXd::Identity(n, n) / p.dt + a / (p.sigma * p.mu) + p.eps * a * a;
        Eigen::VectorXd phi;
        if (p.eps == 0.0) {
            phi = base.fullPivLu().solve(rhs);
        } else {
            Eigen::VectorXd w = a * phi0;
            Eigen::VectorXd w2 = w.cwiseProduct(w);
            Eigen::VectorXd last;
            for (int it = 1; it <= p.picardMax; ++it) {
                const Eigen::MatrixXd m = base + (p.eps / (p.mu * p.mu)) * w2.asDiagonal() * a;
                phi = m.fullPivLu().solve(rhs);
                if (it > 1 && (phi - last).lpNorm<Eigen::Infinity>() <= p.picardTol * phi.lpNorm<Eigen::Infinity>()) break;
                last = phi;
                w = a * phi;
                w2 = w.cwiseProduct(w);
            }
        }
        ScalarField out(g, Location::Node, pb);
        for (int j = 1; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i) out(i, j) = pb + phi[id(i, j)];
        return out;
    }
};

inline ScalarField randomPotential(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const double pb = d(rng);
    ScalarField psi(g, Location::Node, pb);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) psi(i, j) = pb + d(rng);
    return psi;
}

inline double maxRelDiff(const ScalarField& a, const ScalarField& b) {
    double e = 0.0, s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        e = std::max(e, std::abs(a.values()[k] - b.values()[k]));
        s = std::max(s, std::abs(b.values()[k]));
    }
    return e / s;
}

inline SchemeParams inductionParams(double eps) {
    SchemeParams p;
    p.sigma = 2.0;
    p.mu = 0.8;
    p.dt = 0.01;
    p.eps = eps;
    p.picardTol = 1e-13;
    p.picardMax = 100;
    return p;
}

}  // namespace testing_support
