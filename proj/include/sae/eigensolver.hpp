#pragma once

#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace sae::fd {

struct SolverOptions {
  // Dense SelfAdjointEigenSolver below this many unknowns.
  int dense_threshold = 2000;
  int max_iterations = 2000;
  // Residual target ||Hv - Ev|| <= tol * max(1, |E|) for unit v.
  double tol = 1e-8;
  std::uint64_t seed = 0x5ae1ab;
};

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // unit Euclidean columns
  Eigen::VectorXd residuals;
  int iterations = 0;  // 0 for the dense path
  double shift = 0.0;
};

// Lowest `count` eigenpairs of a real symmetric sparse matrix. Large
// problems use shift-invert block subspace iteration with Rayleigh-Ritz;
// the shift sits just below the lowest eigenvalue, located by Sylvester
// inertia counts of LDL^T factorizations.
EigenPairs lowest_eigenpairs(const Eigen::SparseMatrix<double>& H, int count,
                             const SolverOptions& opts = {});

// Number of eigenvalues of H below sigma.
int count_below(const Eigen::SparseMatrix<double>& H, double sigma);

}  // namespace sae::fd
