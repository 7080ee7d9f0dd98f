#include "katolab/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace katolab {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double norm2(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

HermitianMatrix::HermitianMatrix(const CMatrix& entries, double herm_tol) : tol_(herm_tol) {
  require(entries.rows() >= 1 && entries.rows() == entries.cols(), "not Hermitian: matrix must be square and nonempty");
  require(herm_tol >= 0.0, "not Hermitian: negative tolerance");
  require(entries.allFinite(), "not Hermitian: non-finite entry");
  const double scale = std::max(1.0, max_abs(entries));
  const double asym = max_abs(entries - entries.adjoint());
  if (asym > herm_tol * scale) fail("not Hermitian");
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianMatrix HermitianMatrix::from_real(const RMatrix& entries, double herm_tol) {
  return HermitianMatrix(entries.cast<Complex>(), herm_tol);
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& diag) {
  return HermitianMatrix(diag.cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(Index n) {
  return HermitianMatrix(CMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require(dim() == o.dim(), "dimension mismatch");
  return HermitianMatrix(m_ + o.m_, tol_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require(dim() == o.dim(), "dimension mismatch");
  return HermitianMatrix(m_ - o.m_, tol_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(m_ * s, tol_, Trusted{});
}

HermitianMatrix HermitianMatrix::shifted(double shift) const {
  CMatrix m = m_;
  m.diagonal().array() -= shift;
  return HermitianMatrix(std::move(m), tol_, Trusted{});
}

std::size_t SpectralDecomposition::cluster_of(Index k) const {
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (Index i : clusters[c])
      if (i == k) return c;
  fail("eigenvalue index out of range");
}

std::optional<std::size_t> SpectralDecomposition::cluster_near(double value) const {
  const double radius = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const double tol = std::max(cluster_tol, 1e-12 * std::max(1.0, radius));
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (Index i : clusters[c])
      if (std::abs(eigenvalues(i) - value) <= tol) return c;
  return std::nullopt;
}

double SpectralDecomposition::cluster_value(std::size_t c) const {
  double s = 0.0;
  for (Index i : clusters.at(c)) s += eigenvalues(i);
  return s / static_cast<double>(clusters[c].size());
}

CMatrix SpectralDecomposition::cluster_projector(std::size_t c) const {
  CMatrix p = CMatrix::Zero(dim(), dim());
  for (Index i : clusters.at(c)) p += vectors.col(i) * vectors.col(i).adjoint();
  return p;
}

double SpectralDecomposition::distance_to_spectrum(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < eigenvalues.size(); ++i) d = std::min(d, std::abs(Complex(eigenvalues(i)) - z));
  return d;
}

OrthogonalProjection OrthogonalProjection::from_matrix(const CMatrix& p) {
  require(p.rows() >= 1 && p.rows() == p.cols(), "not an orthogonal projection");
  require(max_abs(p - p.adjoint()) <= 1e-12 * std::max(1.0, max_abs(p)), "not an orthogonal projection: not self-adjoint");
  require(max_abs(p * p - p) <= 1e-10, "not an orthogonal projection: not idempotent");
  const double tr = p.trace().real();
  const double rank = std::round(tr);
  require(std::abs(tr - rank) <= 1e-8, "not an orthogonal projection: trace not integral");
  return OrthogonalProjection(HermitianMatrix(p, 1e-12), static_cast<Index>(rank));
}

OrthogonalProjection OrthogonalProjection::onto_span(const CMatrix& columns, double rank_tol) {
  require(columns.rows() >= 1, "not an orthogonal projection");
  const Index n = columns.rows();
  if (columns.cols() == 0) return OrthogonalProjection(HermitianMatrix::zero(n), 0);
  Eigen::BDCSVD<CMatrix> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > rank_tol * std::max(1.0, sv(0))) ++r;
  const CMatrix u = svd.matrixU().leftCols(r);
  return OrthogonalProjection(HermitianMatrix(u * u.adjoint(), 1e-12), r);
}

Grid1D::Grid1D(double x_min, double x_max, Index n) : x_min_(x_min), x_max_(x_max), n_(n) {
  require(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max, "invalid grid: need x_min < x_max");
  require(n >= 2, "invalid grid: need at least 2 interior points");
  h_ = (x_max - x_min) / static_cast<double>(n + 1);
}

RVector Grid1D::nodes() const {
  RVector x(n_);
  for (Index i = 0; i < n_; ++i) x(i) = node(i);
  return x;
}

double default_cluster_tol(const RVector& eigenvalues) {
  if (eigenvalues.size() == 0) return 0.0;
  return 1e-9 * eigenvalues.cwiseAbs().maxCoeff();
}

SpectralDecomposition eig(const HermitianMatrix& h, std::optional<double> cluster_tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) fail("decomposition failed");

  SpectralDecomposition sd;
  sd.eigenvalues = solver.eigenvalues();
  sd.vectors = solver.eigenvectors();
  const Index n = sd.dim();

  for (Index k = 0; k < n; ++k) {
    Index imax = 0;
    sd.vectors.col(k).cwiseAbs().maxCoeff(&imax);
    const Complex c = sd.vectors(imax, k);
    sd.vectors.col(k) *= std::conj(c) / std::abs(c);
    sd.vectors(imax, k) = std::abs(sd.vectors(imax, k));
  }

  sd.cluster_tol = cluster_tol.value_or(default_cluster_tol(sd.eigenvalues));
  require(sd.cluster_tol >= 0.0, "negative cluster tolerance");
  sd.clusters.push_back({0});
  for (Index k = 1; k < n; ++k) {
    if (sd.eigenvalues(k) - sd.eigenvalues(k - 1) <= sd.cluster_tol)
      sd.clusters.back().push_back(k);
    else
      sd.clusters.push_back({k});
  }
  return sd;
}

OrthogonalProjection spectral_projection(const SpectralDecomposition& sd, double a, double b) {
  require(a < b, "empty interval");
  const double radius = sd.eigenvalues.cwiseAbs().maxCoeff();
  const double tol = std::max(sd.cluster_tol, 1e-14 * std::max(1.0, radius));
  CMatrix p = CMatrix::Zero(sd.dim(), sd.dim());
  for (Index k = 0; k < sd.dim(); ++k) {
    const double l = sd.eigenvalues(k);
    if (std::abs(l - a) <= tol || std::abs(l - b) <= tol) fail("endpoint hits spectrum");
    if (l > a && l < b) p += sd.vectors.col(k) * sd.vectors.col(k).adjoint();
  }
  return OrthogonalProjection::from_matrix(0.5 * (p + p.adjoint()));
}

OrthogonalProjection spectral_projection(const HermitianMatrix& h, double a, double b,
                                         std::optional<double> cluster_tol) {
  return spectral_projection(eig(h, cluster_tol), a, b);
}

HermitianMatrix reduced_resolvent(const SpectralDecomposition& sd, double e0) {
  const auto c0 = sd.cluster_near(e0);
  if (!c0) fail("E0 not in spectrum");
  CMatrix s = CMatrix::Zero(sd.dim(), sd.dim());
  for (std::size_t c = 0; c < sd.clusters.size(); ++c) {
    if (c == *c0) continue;
    for (Index k : sd.clusters[c])
      s += (1.0 / (sd.eigenvalues(k) - e0)) * (sd.vectors.col(k) * sd.vectors.col(k).adjoint());
  }
  return HermitianMatrix(0.5 * (s + s.adjoint()), 1e-12);
}

HermitianMatrix reduced_resolvent(const HermitianMatrix& h, double e0, std::optional<double> cluster_tol) {
  return reduced_resolvent(eig(h, cluster_tol), e0);
}

CMatrix resolvent(const HermitianMatrix& h, Complex z) {
  const auto sd = eig(h);
  if (sd.distance_to_spectrum(z) <= 1e-12) fail("resolvent pole");
  CVector d(sd.dim());
  for (Index k = 0; k < sd.dim(); ++k) d(k) = 1.0 / (sd.eigenvalues(k) - z);
  return sd.vectors * d.asDiagonal() * sd.vectors.adjoint();
}

CMatrix apply_function(const SpectralDecomposition& sd, const std::function<double(double)>& f) {
  RVector d(sd.dim());
  for (Index k = 0; k < sd.dim(); ++k) d(k) = f(sd.eigenvalues(k));
  CMatrix m = sd.vectors * d.cast<Complex>().asDiagonal() * sd.vectors.adjoint();
  return 0.5 * (m + m.adjoint());
}

SymmetricTridiagonal discretize_1d(const Grid1D& grid, std::span<const double> potential) {
  const Index n = grid.size();
  require(static_cast<Index>(potential.size()) == n, "invalid potential sample: size mismatch");
  const double h2 = grid.spacing() * grid.spacing();
  SymmetricTridiagonal t;
  t.diag.resize(n);
  t.offdiag = RVector::Constant(n - 1, -1.0 / h2);
  for (Index i = 0; i < n; ++i) {
    if (!std::isfinite(potential[i])) fail("invalid potential sample");
    t.diag(i) = 2.0 / h2 + potential[i];
  }
  return t;
}

SymmetricTridiagonal discretize_1d(const Grid1D& grid, const std::function<double(double)>& potential) {
  std::vector<double> v(grid.size());
  for (Index i = 0; i < grid.size(); ++i) v[i] = potential(grid.node(i));
  return discretize_1d(grid, std::span<const double>(v));
}

double channel_barrier(int nu) { return 0.25 * (nu - 1) * (nu - 3); }

SymmetricTridiagonal radial_channel(const Grid1D& grid, int nu, int ell,
                                    const std::function<double(double)>& q) {
  if (grid.x_min() < 0.0) fail("negative radius");
  require(nu >= 2 && ell >= 0, "invalid channel: need nu >= 2 and ell >= 0");
  const double barrier = channel_barrier(nu);
  const double centrifugal = static_cast<double>(ell) * (ell + nu - 2);
  std::vector<double> v(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    v[i] = (barrier + centrifugal) / (r * r) + (q ? q(r) : 0.0);
  }
  return discretize_1d(grid, std::span<const double>(v));
}

}  // namespace katolab
