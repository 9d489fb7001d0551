#pragma once

#include "pmhd/errors.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/UmfPackSupport>

#include <algorithm>
#include <string>

namespace pmhd::detail {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Preconditioner that applies an LU factorization of a nearby matrix.
struct FrozenLU {
    const Eigen::UmfPackLU<SpMat>* lu = nullptr;
    template <typename M> FrozenLU& analyzePattern(const M&) { return *this; }
    template <typename M> FrozenLU& factorize(const M&) { return *this; }
    template <typename M> FrozenLU& compute(const M&) { return *this; }
    template <typename R> Vec solve(const R& b) const { return lu->solve(Vec(b)); }
    Eigen::ComputationInfo info() const { return Eigen::Success; }
};

// Direct factorization reused as a preconditioner for nearby matrices.
class ReusedLU {
public:
    Vec solve(const SpMat& m, const Vec& rhs, const Vec& guess, const char* what) {
        if (ready_ && factored_.rows() == m.rows()) {
            Eigen::BiCGSTAB<SpMat, FrozenLU> krylov;
            krylov.preconditioner().lu = &lu_;
            krylov.setTolerance(1e-13);
            krylov.setMaxIterations(20);
            krylov.compute(m);
            Vec x = krylov.solveWithGuess(rhs, guess);
            if (krylov.info() == Eigen::Success && x.allFinite()) return x;
        }
        const bool same = ready_ && samePattern(m);
        factored_ = m;
        factored_.makeCompressed();
        if (!same) lu_.analyzePattern(factored_);
        lu_.factorize(factored_);
        if (lu_.info() != Eigen::Success) throw SolverError(std::string(what) + ": sparse LU factorization failed");
        ready_ = true;
        ++factorizations_;
        Vec x = lu_.solve(rhs);
        if (!x.allFinite()) throw SolverError(std::string(what) + ": sparse LU solve failed");
        return x;
    }
    int factorizations() const { return factorizations_; }

private:
    bool samePattern(const SpMat& m) const {
        if (!m.isCompressed() || factored_.rows() != m.rows() || factored_.cols() != m.cols() ||
            factored_.nonZeros() != m.nonZeros())
            return false;
        const auto n = m.outerSize();
        return std::equal(m.outerIndexPtr(), m.outerIndexPtr() + n + 1, factored_.outerIndexPtr()) &&
               std::equal(m.innerIndexPtr(), m.innerIndexPtr() + m.nonZeros(), factored_.innerIndexPtr());
    }

    Eigen::UmfPackLU<SpMat> lu_;
    SpMat factored_;  // the LU keeps a reference to this
    bool ready_ = false;
    int factorizations_ = 0;
};

}  // namespace pmhd::detail
