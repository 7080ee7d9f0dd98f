#include "katolab/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "katolab/operator_core.hpp"

namespace katolab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// LU with partial pivoting of a general tridiagonal matrix, same storage
// scheme as LAPACK's gttrf: dl, d, du overwritten, du2 holds the fill-in.
struct TridiagonalLU {
  Eigen::VectorXd dl, d, du, du2;
  std::vector<char> swapped;

  TridiagonalLU(const SymmetricTridiagonal& t, double shift, double pivmin) {
    const Eigen::Index n = t.size();
    d = t.diag.array() - shift;
    dl = t.offdiag;
    du = t.offdiag;
    du2 = Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 2, 0));
    swapped.assign(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)), 0);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (std::abs(d(i)) >= std::abs(dl(i))) {
        if (d(i) == 0.0) d(i) = pivmin;
        const double fact = dl(i) / d(i);
        dl(i) = fact;
        d(i + 1) -= fact * du(i);
      } else {
        const double fact = d(i) / dl(i);
        d(i) = dl(i);
        dl(i) = fact;
        const double tmp = du(i);
        du(i) = d(i + 1);
        d(i + 1) = tmp - fact * d(i + 1);
        if (i + 2 < n) {
          du2(i) = du(i + 1);
          du(i + 1) = -fact * du(i + 1);
        }
        swapped[static_cast<std::size_t>(i)] = 1;
      }
    }
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(d(i)) < pivmin) d(i) = std::copysign(pivmin, d(i) == 0.0 ? 1.0 : d(i));
  }

  void solve(Eigen::VectorXd& b) const {
    const Eigen::Index n = d.size();
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (swapped[static_cast<std::size_t>(i)]) {
        const double tmp = b(i) - dl(i) * b(i + 1);
        b(i) = b(i + 1);
        b(i + 1) = tmp;
      } else {
        b(i + 1) -= dl(i) * b(i);
      }
    }
    b(n - 1) /= d(n - 1);
    if (n > 1) b(n - 2) = (b(n - 2) - du(n - 2) * b(n - 1)) / d(n - 2);
    for (Eigen::Index i = n - 3; i >= 0; --i) b(i) = (b(i) - du(i) * b(i + 1) - du2(i) * b(i + 2)) / d(i);
  }
};

double gershgorin_norm(const SymmetricTridiagonal& t, double& lo, double& hi) {
  const Eigen::Index n = t.size();
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.offdiag(i - 1));
    if (i + 1 < n) r += std::abs(t.offdiag(i));
    lo = std::min(lo, t.diag(i) - r);
    hi = std::max(hi, t.diag(i) + r);
  }
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace

HermitianMatrix SymmetricTridiagonal::dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m.diagonal() = diag;
  for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = offdiag(i);
  return HermitianMatrix::from_real(m, 0.0);
}

Eigen::VectorXd SymmetricTridiagonal::apply(const Eigen::VectorXd& x) const {
  const Eigen::Index n = size();
  Eigen::VectorXd y = diag.cwiseProduct(x);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    y(i) += offdiag(i) * x(i + 1);
    y(i + 1) += offdiag(i) * x(i);
  }
  return y;
}

Eigen::Index SymmetricTridiagonal::count_below(double x) const {
  const Eigen::Index n = size();
  double lo, hi;
  const double pivmin = std::max(std::numeric_limits<double>::min(), kEps * kEps * gershgorin_norm(*this, lo, hi));
  Eigen::Index count = 0;
  double q = diag(0) - x;
  for (Eigen::Index i = 0;; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    q = diag(i + 1) - x - offdiag(i) * offdiag(i) / q;
  }
  return count;
}

Eigen::VectorXd SymmetricTridiagonal::lowest_eigenvalues(Eigen::Index k) const {
  const Eigen::Index n = size();
  require(n >= 1, "empty tridiagonal matrix");
  require(k >= 1 && k <= n, "requested eigenvalue count out of range");
  double glo, ghi;
  const double scale = gershgorin_norm(*this, glo, ghi);
  glo -= 2.0 * kEps * scale + std::numeric_limits<double>::min();
  ghi += 2.0 * kEps * scale + std::numeric_limits<double>::min();

  Eigen::VectorXd vals(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    double lo = j > 0 ? std::max(glo, vals(j - 1) - 4.0 * kEps * scale) : glo;
    double hi = ghi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + 1e-300 || mid == lo || mid == hi) break;
      if (count_below(mid) > j)
        hi = mid;
      else
        lo = mid;
    }
    vals(j) = 0.5 * (lo + hi);
  }
  return vals;
}

TridiagonalEigen SymmetricTridiagonal::lowest(Eigen::Index k) const {
  const Eigen::Index n = size();
  TridiagonalEigen out;
  out.values = lowest_eigenvalues(k);
  out.vectors.resize(n, k);
  double glo, ghi;
  const double scale = std::max(gershgorin_norm(*this, glo, ghi), std::numeric_limits<double>::min());
  const double pivmin = kEps * scale;

  for (Eigen::Index j = 0; j < k; ++j) {
    const TridiagonalLU lu(*this, out.values(j), pivmin);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3 * static_cast<double>(j));
    v.normalize();
    for (int it = 0; it < 6; ++it) {
      lu.solve(v);
      for (Eigen::Index p = 0; p < j; ++p)
        if (std::abs(out.values(p) - out.values(j)) < 1e-7 * scale) v -= out.vectors.col(p).dot(v) * out.vectors.col(p);
      const double nv = v.norm();
      require(std::isfinite(nv) && nv > 0.0, "inverse iteration failed");
      v /= nv;
      if (it >= 2 && (apply(v) - out.values(j) * v).norm() <= 1e3 * kEps * scale) break;
    }
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v = -v;
    out.vectors.col(j) = v;
  }
  return out;
}

}  // namespace katolab
