#pragma once

#include <cstddef>
#include <vector>

namespace qas {

// Dense real symmetric matrix stored row-major.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // n*n

    static SymMatrix zeros(std::size_t n) { return {n, std::vector<double>(n * n, 0.0)}; }
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double max_asymmetry() const;
    double inf_norm() const;  // max row abs sum
};

// Full eigendecomposition, eigenvalues ascending. eigenvectors.row(k) holds
// the unit eigenvector of eigenvalues[k] (so the storage is V^T).
struct SymmetricEigen {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;
};

// Householder tridiagonalization followed by implicit-shift QL. Deterministic:
// no piv，no randomness; identical input gives identical output.
// Throws std::runtime_error if the QL sweep fails to converge (pathological
// input) — never observed for symmetric matrices within floating-point range.
SymmetricEigen symmetric_eigen(const SymMatrix& m);

// Residual max_i |(A v)_i - lambda v_i| for a computed pair.
double eigen_residual_inf(const SymMatrix& m, const std::vector<double>& v, double lambda);

}  // namespace qas
