#pragma once

#include <Eigen/Dense>

namespace katolab {

class HermitianMatrix;

struct TridiagonalEigen {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< unit columns, sign fixed so the largest entry is positive
};

/// Real symmetric tridiagonal matrix. Finite-difference Hamiltonians live here
/// so that grids of several thousand points never need a dense n x n buffer.
struct SymmetricTridiagonal {
  Eigen::VectorXd diag;     ///< size n
  Eigen::VectorXd offdiag;  ///< size n - 1

  Eigen::Index size() const { return diag.size(); }
  HermitianMatrix dense() const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  /// Number of eigenvalues strictly below `x` (Sturm count).
  Eigen::Index count_below(double x) const;
  /// The k lowest eigenvalues, by bisection on the Sturm count.
  Eigen::VectorXd lowest_eigenvalues(Eigen::Index k) const;
  /// The k lowest eigenpairs: bisection followed by inverse iteration.
  TridiagonalEigen lowest(Eigen::Index k) const;
};

}  // namespace katolab
