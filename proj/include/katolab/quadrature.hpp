#pragma once

#include <Eigen/Dense>

namespace katolab {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// n-point Gauss-Laguerre rule for the weight e^{-x} on [0, inf), from the
/// eigen-decomposition of the Jacobi matrix.
QuadratureRule gauss_laguerre(int n);

/// Least-squares slope of log|y| against log|x|.
double loglog_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace katolab
