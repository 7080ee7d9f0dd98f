#include "katolab/quadrature.hpp"

#include <cmath>

#include "katolab/error.hpp"

namespace katolab {

QuadratureRule gauss_laguerre(int n) {
  require(n >= 1, "quadrature order must be positive");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    j(i, i) = 2.0 * i + 1.0;
    if (i + 1 < n) j(i, i + 1) = j(i + 1, i) = i + 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail("decomposition failed");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Eigenvector components underflow for the large nodes, so the weights
  // come from the polynomial formula instead, after a Newton polish of
  // each node in extended precision.
  for (int i = 0; i < n; ++i) {
    long double x = es.eigenvalues()(i);
    long double ln = 0, lnm1 = 0;
    for (int it = 0; it < 8; ++it) {
      long double p0 = 1, p1 = 1 - x;
      for (int k = 1; k < n; ++k) {
        const long double p2 = ((2 * k + 1 - x) * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      ln = p1;
      lnm1 = p0;
      const long double dl = n * (ln - lnm1) / x;
      const long double step = ln / dl;
      x -= step;
      if (std::fabs(step) <= 1e-18L * x) break;
    }
    long double p0 = 1, p1 = 1 - x;
    for (int k = 1; k <= n; ++k) {
      const long double p2 = ((2 * k + 1 - x) * p1 - k * p0) / (k + 1);
      p0 = p1;
      p1 = p2;
    }
    const long double lnp1 = p1;
    r.nodes(i) = static_cast<double>(x);
    r.weights(i) = static_cast<double>(x / ((n + 1.0L) * (n + 1.0L) * lnp1 * lnp1));
  }
  return r;
}

double loglog_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  require(x.size() == y.size() && x.size() >= 2, "slope fit needs at least two points");
  const Eigen::ArrayXd lx = x.array().abs().log();
  const Eigen::ArrayXd ly = y.array().abs().log();
  const double mx = lx.mean(), my = ly.mean();
  const double sxx = (lx - mx).square().sum();
  require(sxx > 0.0, "slope fit needs distinct abscissae");
  return ((lx - mx) * (ly - my)).sum() / sxx;
}

}  // namespace katolab
