#pragma once

// Dense Hermitian operator algebra: eigendecomposition with degeneracy
// clustering, spectral projections, resolvents and reduced resolvents, plus
// the finite-difference Schroedinger discretizers used by the model problems.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "katolab/error.hpp"
#include "katolab/tridiagonal.hpp"

namespace katolab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest entry modulus, the `_max` norm used throughout for tolerances.
double max_abs(const CMatrix& m);
/// Spectral (operator 2-) norm via singular values.
double norm2(const CMatrix& m);

/// A dense complex square matrix certified Hermitian within `herm_tol`
/// (relative to max(1, max|entry|)). The stored matrix is the exact Hermitian
/// part of the input, so algebraic identities downstream are not polluted by
/// the tolerated asymmetry.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& entries, double herm_tol = 1e-12);

  static HermitianMatrix from_real(const RMatrix& entries, double herm_tol = 1e-12);
  static HermitianMatrix diagonal(const RVector& diag);
  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);

  Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  double herm_tol() const { return tol_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;
  /// H - shift * I
  HermitianMatrix shifted(double shift) const;

 private:
  struct Trusted {};
  HermitianMatrix(CMatrix m, double tol, Trusted) : m_(std::move(m)), tol_(tol) {}
  CMatrix m_;
  double tol_;
};

struct SpectralDecomposition {
  RVector eigenvalues;                      ///< ascending
  CMatrix vectors;                          ///< column k belongs to eigenvalue k
  std::vector<std::vector<Index>> clusters; ///< index groups, ascending
  double cluster_tol = 0.0;

  Index dim() const { return eigenvalues.size(); }
  /// Cluster index holding eigenvalue `k`.
  std::size_t cluster_of(Index k) const;
  /// Cluster whose eigenvalues lie within cluster_tol of `value`, if any.
  std::optional<std::size_t> cluster_near(double value) const;
  /// Mean eigenvalue of a cluster.
  double cluster_value(std::size_t c) const;
  /// Sum of v v* over the cluster's eigenvectors.
  CMatrix cluster_projector(std::size_t c) const;
  /// Distance from `z` to the spectrum.
  double distance_to_spectrum(Complex z) const;
};

class OrthogonalProjection {
 public:
  /// Validates P^2 = P, P = P*, and integral trace.
  static OrthogonalProjection from_matrix(const CMatrix& p);
  /// Orthogonal projection onto the column span of `columns` (rank from SVD).
  static OrthogonalProjection onto_span(const CMatrix& columns, double rank_tol = 1e-10);

  const HermitianMatrix& hermitian() const { return p_; }
  const CMatrix& matrix() const { return p_.matrix(); }
  Index rank() const { return rank_; }
  Index dim() const { return p_.dim(); }

 private:
  OrthogonalProjection(HermitianMatrix p, Index rank) : p_(std::move(p)), rank_(rank) {}
  HermitianMatrix p_;
  Index rank_;
};

/// Uniform Dirichlet grid with `n` interior nodes x_i = x_min + i h, i = 1..n.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, Index n);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  Index size() const { return n_; }
  double spacing() const { return h_; }
  /// Node i in 0-based storage order, i.e. x_min + (i + 1) h.
  double node(Index i) const { return x_min_ + static_cast<double>(i + 1) * h_; }
  RVector nodes() const;

 private:
  double x_min_, x_max_;
  Index n_;
  double h_;
};

/// Default degeneracy tolerance: 1e-9 times the spectral radius.
double default_cluster_tol(const RVector& eigenvalues);

SpectralDecomposition eig(const HermitianMatrix& h, std::optional<double> cluster_tol = {});

/// Orthogonal projection onto eigenvectors with eigenvalues in the open
/// interval (a, b). Endpoints may not touch the spectrum.
OrthogonalProjection spectral_projection(const HermitianMatrix& h, double a, double b,
                                         std::optional<double> cluster_tol = {});
OrthogonalProjection spectral_projection(const SpectralDecomposition& sd, double a, double b);

/// S = (H - E0)^{-1} (1 - P) where P projects on the E0 cluster.
HermitianMatrix reduced_resolvent(const HermitianMatrix& h, double e0,
                                  std::optional<double> cluster_tol = {});
HermitianMatrix reduced_resolvent(const SpectralDecomposition& sd, double e0);

/// (H - z)^{-1} via the spectral representation.
CMatrix resolvent(const HermitianMatrix& h, Complex z);

/// f(H) by spectral calculus for a real function f.
CMatrix apply_function(const SpectralDecomposition& sd, const std::function<double(double)>& f);

/// -d^2/dx^2 + V with the 3-point stencil and Dirichlet ends.
SymmetricTridiagonal discretize_1d(const Grid1D& grid, std::span<const double> potential);
SymmetricTridiagonal discretize_1d(const Grid1D& grid, const std::function<double(double)>& potential);

/// (nu - 1)(nu - 3) / 4, the centrifugal-type term of the nu-dimensional
/// s-wave reduction.
double channel_barrier(int nu);

/// Radial channel -d^2/dr^2 + (nu-1)(nu-3)/(4r^2) + l(l+nu-2)/r^2 + q(r).
SymmetricTridiagonal radial_channel(const Grid1D& grid, int nu, int ell,
                                    const std::function<double(double)>& q);

/// Two-grid Richardson extrapolation for an O(h^order) quantity, given values
/// at spacing h and h/2.
inline double richardson(double coarse, double fine, int order = 2) {
  const double f = static_cast<double>(1 << order);
  return (f * fine - coarse) / (f - 1.0);
}

}  // namespace katolab
